//! Quadrature engines shared by the whole crate: adaptive integration with
//! a nested Gauss-Legendre 7/15 pair, Gaussian-weighted half-line moments,
//! and principal-value integration by singularity subtraction.
//!
//! All integrands are complex-valued callbacks of a real variable. The
//! engines are pure; callbacks must be reentrant (they may be invoked in
//! any order, any number of times).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Evaluation budget per public integration call. Every integrand here is
/// Gaussian-damped and smooth away from at most one subtracted pole, so a
/// blown budget signals a genuinely hostile input rather than slow
/// convergence.
pub const NODE_BUDGET: usize = 1 << 16;

/// Default integration tolerance used when a caller has no better choice.
pub const DEFAULT_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Gauss-Legendre machinery
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-flavored initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..64 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x; // guesses come out descending; store ascending
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule7() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(7))
}

fn rule15() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(15))
}

fn panel<F>(f: &F, lo: f64, hi: f64, rule: &(Vec<f64>, Vec<f64>)) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for (&x, &w) in rule.0.iter().zip(rule.1.iter()) {
        let v = f(mid + half * x);
        acc += w * v;
        l1 += w * v.norm();
    }
    (acc * half, l1 * half.abs())
}

/// Roundoff floor: a panel whose 7/15 disagreement is below this multiple
/// of its L1 mass is noise-limited and splitting it cannot help.
const ROUNDOFF: f64 = 2e-15;

/// Adaptive bisection with the 7/15 pair over a shared evaluation budget.
/// The error estimate per panel is the difference of the two rules;
/// panels split until the local share of `tol` is met, the panel becomes
/// roundoff-limited, or the budget runs out.
fn adaptive_core<F>(f: &F, a: f64, b: f64, tol: f64, budget: &mut isize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut stack = vec![(a, b, tol)];
    let mut total = Complex64::new(0.0, 0.0);
    while let Some((lo, hi, t)) = stack.pop() {
        *budget -= 22;
        if *budget < 0 {
            return Err(Error::Convergence(format!(
                "node budget {NODE_BUDGET} exhausted on [{a}, {b}]"
            )));
        }
        let (coarse, _) = panel(f, lo, hi, rule7());
        let (fine, l1) = panel(f, lo, hi, rule15());
        let err = (fine - coarse).norm();
        let width_floor = (hi - lo).abs() < 1e-14 * (lo.abs().max(hi.abs()).max(1.0));
        if err <= t.max(ROUNDOFF * l1) || width_floor {
            total += fine;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    Ok(total)
}

/// One-interval adaptive integration with a fresh budget.
pub(crate) fn adaptive_integral<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!(
            "adaptive integral needs finite bounds and tol > 0 (got [{a}, {b}], tol {tol})"
        )));
    }
    let mut budget = NODE_BUDGET as isize;
    adaptive_core(f, a, b, tol, &mut budget)
}

/// Adaptive integration with panels aligned to the mesh points — the
/// right tool when the integrand is smooth within mesh cells but has
/// kinks at the nodes (e.g. piecewise interpolants). Tolerance splits
/// across cells in proportion to width; the budget is shared.
pub(crate) fn adaptive_on_mesh<F>(f: &F, mesh: &[f64], tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if mesh.len() < 2 || mesh.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::Domain(
            "mesh integration needs at least two strictly increasing points".into(),
        ));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be positive (got {tol})")));
    }
    let total_width = mesh[mesh.len() - 1] - mesh[0];
    let mut budget = NODE_BUDGET as isize;
    let mut total = Complex64::new(0.0, 0.0);
    for cell in mesh.windows(2) {
        let share = tol * (cell[1] - cell[0]) / total_width;
        total += adaptive_core(f, cell[0], cell[1], share, &mut budget)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Public quadrature operations
// ---------------------------------------------------------------------------

/// `int_0^inf exp(-mu^2) f(mu) dmu`, truncated where the Gaussian tail
/// falls below `tol / 10` (never earlier than mu = 8).
///
/// # Errors
/// `Convergence` if adaptive refinement exceeds [`NODE_BUDGET`];
/// `Domain` for a non-positive tolerance.
pub fn integrate_gauss_halfline<F>(f: F, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be positive (got {tol})")));
    }
    let mu_max = (10.0 / tol).ln().sqrt().max(8.0);
    adaptive_integral(&|mu: f64| (-mu * mu).exp() * f(mu), 0.0, mu_max, tol)
}

/// [`integrate_gauss_halfline`], with panels aligned to `breaks` —
/// abscissas where `f` is only piecewise smooth (for instance the edges
/// of an interpolation grid). Aligning keeps the quadrature nodes off
/// the kinks themselves and spares the refinement loop from chasing a
/// jump it can never resolve.
///
/// Breaks outside `(0, mu_max)` are ignored; they need not be sorted.
///
/// # Errors
/// Same as [`integrate_gauss_halfline`].
pub fn integrate_gauss_halfline_with_breaks<F>(f: F, breaks: &[f64], tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be positive (got {tol})")));
    }
    let mu_max = (10.0 / tol).ln().sqrt().max(8.0);
    let mut mesh = vec![0.0];
    let mut interior: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > 0.0 && *b < mu_max)
        .collect();
    interior.sort_by(f64::total_cmp);
    for b in interior {
        if b > mesh[mesh.len() - 1] {
            mesh.push(b);
        }
    }
    mesh.push(mu_max);
    adaptive_on_mesh(&|mu: f64| (-mu * mu).exp() * f(mu), &mesh, tol)
}

/// Principal value `PV int_a^b f(mu) / (pole - mu) dmu` by singularity
/// subtraction: the regularized integrand `(f(mu) - f(pole))/(pole - mu)`
/// goes to the adaptive engine and the subtracted constant integrates to
/// the analytic log term `f(pole) ln((pole - a)/(b - pole))`.
///
/// # Errors
/// `Domain` unless `a < pole < b` with nonvanishing gaps.
pub fn pv_on_interval<F>(f: F, pole: f64, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    pv_on_mesh(&f, pole, &[a, b], tol)
}

/// Principal value over a mesh of breakpoints (see [`pv_on_interval`]);
/// panels align to the mesh so piecewise-smooth densities — including a
/// pole sitting exactly on an interior node — stay cheap to integrate.
pub(crate) fn pv_on_mesh<F>(f: &F, pole: f64, mesh: &[f64], tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if mesh.len() < 2 || mesh.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::Domain(
            "principal value needs at least two strictly increasing mesh points".into(),
        ));
    }
    let (a, b) = (mesh[0], mesh[mesh.len() - 1]);
    let scale = pole.abs().max(b.abs()).max(1.0);
    let lo_gap = pole - a;
    let hi_gap = b - pole;
    if !(lo_gap > 1e-12 * scale && hi_gap > 1e-12 * scale) {
        return Err(Error::Domain(format!(
            "pole {pole} must lie strictly inside the integration interval [{a}, {b}]"
        )));
    }
    let f_pole = f(pole);
    let near = 1e-9 * scale;
    let regularized = |mu: f64| -> Complex64 {
        let gap = pole - mu;
        if gap.abs() < near {
            // Hölder limit -f'(pole), by a symmetric secant straddling the pole.
            let d = near.max(1e-10);
            (f(pole + d) - f(pole - d)) / (-2.0 * d)
        } else {
            (f(mu) - f_pole) / gap
        }
    };
    let regular_part = adaptive_on_mesh(&regularized, mesh, tol)?;
    Ok(regular_part + f_pole * (lo_gap / hi_gap).ln())
}

/// Principal value `PV int_0^inf f(mu) / (pole - mu) dmu`, truncated at
/// `mu_max = max(8, pole + 8)` where every integrand in this problem is
/// negligible.
///
/// # Errors
/// `Domain` if `pole <= 0`.
pub fn pv_integral<F>(f: F, pole: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(pole > 0.0) {
        return Err(Error::Domain(format!("pole must be positive (got {pole})")));
    }
    let mu_max = (pole + 8.0).max(8.0);
    pv_on_interval(f, pole, 0.0, mu_max, tol)
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// How a [`Grid`]'s nodes and weights were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Equispaced nodes with trapezoid weights.
    Uniform,
    /// Gauss-Legendre nodes and weights mapped onto the interval.
    GaussWeighted,
    /// Externally supplied nodes (e.g. parsed from an expansion file);
    /// weights synthesized from node spacing.
    Adaptive,
}

impl GridKind {
    /// Stable lowercase name (used in diagnostics).
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            GridKind::Uniform => "uniform",
            GridKind::GaussWeighted => "gauss-weighted",
            GridKind::Adaptive => "adaptive",
        }
    }
}

/// A strictly increasing quadrature grid with matching weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: GridKind,
}

impl Grid {
    /// Equispaced grid of `n >= 2` nodes on `[a, b]` with trapezoid weights.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) || n < 2 {
            return Err(Error::Grid(format!(
                "uniform grid needs finite a < b and n >= 2 (got [{a}, {b}], n = {n})"
            )));
        }
        let h = (b - a) / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n - 1] = 0.5 * h;
        Ok(Grid { nodes, weights, kind: GridKind::Uniform })
    }

    /// Gauss-Legendre rule with `n >= 1` points mapped onto `[a, b]`.
    pub fn gauss_legendre(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) || n == 0 {
            return Err(Error::Grid(format!(
                "gauss grid needs finite a < b and n >= 1 (got [{a}, {b}], n = {n})"
            )));
        }
        let (x, w) = legendre_rule(n);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let nodes = x.iter().map(|&t| mid + half * t).collect();
        let weights = w.iter().map(|&t| t * half).collect();
        Ok(Grid { nodes, weights, kind: GridKind::GaussWeighted })
    }

    /// Grid from externally supplied nodes; weights are trapezoid-style
    /// half-spacings so the grid still carries a usable measure.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Grid("empty node list".into()));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::Grid("non-finite node".into()));
        }
        if nodes.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::Grid("nodes must be strictly increasing".into()));
        }
        let n = nodes.len();
        let mut weights = vec![0.0; n];
        if n == 1 {
            weights[0] = 1.0;
        } else {
            weights[0] = 0.5 * (nodes[1] - nodes[0]);
            weights[n - 1] = 0.5 * (nodes[n - 1] - nodes[n - 2]);
            for i in 1..n - 1 {
                weights[i] = 0.5 * (nodes[i + 1] - nodes[i - 1]);
            }
        }
        Ok(Grid { nodes, weights, kind: GridKind::Adaptive })
    }

    #[must_use]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[must_use]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[must_use]
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// First and last node.
    #[must_use]
    pub fn span(&self) -> (f64, f64) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    /// `sum w_i exp(-node_i^2)` — the discrete Gaussian mass the grid
    /// carries, comparable against the continuous mass on its span.
    #[must_use]
    pub fn gaussian_mass(&self) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| w * (-x * x).exp())
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Scalar root/extremum helpers (internal)
// ---------------------------------------------------------------------------

/// Brent's method on a sign-changing bracket.
pub(crate) fn brent_root<F>(f: &F, mut a: f64, mut b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Domain(format!("no sign change on [{a}, {b}]")));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::Convergence(format!("root refinement stalled near {b}")))
}

/// Golden-section maximization of `f` on `[a, b]` (unimodal assumed).
pub(crate) fn golden_max<F>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
