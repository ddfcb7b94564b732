//! Eigenmodes of the driven kinetic half-space problem and assembly of
//! general solutions from them.
//!
//! Solutions factor as `h(x1, mu) = exp(-x1 z0 / eta) F(eta, mu)` with
//! `z0 = 1 - i omega1`. The spectral parameter `eta` either sits at the
//! discrete zero `eta0` of the dispersion function or runs over the
//! positive half-axis, where the eigenfunction is the distribution
//!
//! ```text
//! F(eta, mu) = (eta / sqrt(pi)) P(1 / (eta - mu))
//!              + exp(eta^2) lambda(eta) delta(eta - mu),
//! ```
//!
//! `P` the principal value and `lambda(eta)` the half-sum of the two
//! boundary values on the cut. A general solution combines a discrete
//! amplitude `a0` with a continuous density `a(eta)` sampled on a grid:
//!
//! ```text
//! h(x1, mu) = a0 exp(-x1 z0 / eta0) / (eta0 - mu)
//!   + (1/sqrt(pi)) int exp(-x1 z0 / eta) eta a(eta) / (eta - mu) deta
//!   + exp(-x1 z0 / mu + mu^2) lambda(mu) a(mu)          (mu > 0)
//! ```
//!
//! (the discrete term multiplies the bare Cauchy kernel; the unit-height
//! eigenmode in [`DiscreteMode`] carries an extra `eta0 / sqrt(pi)`).

use crate::dispersion::{lambda0_real, Omega1};
use crate::error::{Error, Result};
use crate::faddeeva::SQRT_PI;
use crate::format::JsonValue;
use crate::numerics::{
    adaptive_on_mesh, integrate_gauss_halfline_with_breaks, pv_on_mesh, Grid,
};
use crate::zeros::find_eta0;
use num_complex::Complex64;
use std::cell::RefCell;

/// Internal quadrature tolerance used when evaluating assembled
/// solutions; two orders tighter than any tolerance exposed to callers so
/// nested integrals never dominate the outer error budget.
const EXPANSION_TOL: f64 = 1e-12;

/// Largest |eta| for which `exp(eta^2)` stays finite in f64 with margin;
/// continuous-mode machinery refuses beyond it.
const ETA_OVERFLOW_BOUND: f64 = 26.0;

/// Largest admissible grid node for expansion densities. Past the
/// Gaussian support the delta weight `exp(mu^2) lambda(mu)` grows out of
/// numerical reach while contributing nothing physical.
const GRID_ETA_MAX: f64 = 12.0;

/// Half-sum of the two boundary values of the dispersion function at
/// `eta` on the axis: `lambda0_real(eta) - i omega1`.
fn lambda_half(eta: f64, omega1: Omega1) -> Complex64 {
    Complex64::new(lambda0_real(eta), -omega1.value())
}

// ---------------------------------------------------------------------------
// Individual modes
// ---------------------------------------------------------------------------

/// A continuous-spectrum eigenfunction at spectral point `eta`.
///
/// Carries the data of the distribution `F(eta, mu)`: the principal-value
/// coefficient `eta / sqrt(pi)` and the delta weight
/// `exp(eta^2) lambda(eta)`. Satisfies the moment normalization
/// `int exp(-mu^2) F(eta, mu) dmu = z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousMode {
    pub eta: f64,
    pub omega1: Omega1,
    /// Coefficient of `P(1/(eta - mu))`.
    pub pv_coefficient: f64,
    /// Axis value of the dispersion function multiplying the delta.
    pub lambda_at_eta: Complex64,
}

impl ContinuousMode {
    /// Weight of the `delta(eta - mu)` part: `exp(eta^2) lambda(eta)`.
    #[must_use]
    pub fn delta_weight(&self) -> Complex64 {
        (self.eta * self.eta).exp() * self.lambda_at_eta
    }

    /// Spatial decay rate `z0 / eta` of the mode's `x1` profile.
    #[must_use]
    pub fn decay(&self) -> Complex64 {
        self.omega1.z0() / self.eta
    }
}

/// Continuous-spectrum mode at `eta`.
///
/// # Errors
/// `Domain` if `eta` is zero, non-finite, or so large that the delta
/// weight overflows.
pub fn continuous_mode(eta: f64, omega1: Omega1) -> Result<ContinuousMode> {
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::Domain(format!(
            "continuous spectral parameter must be real and nonzero (got {eta})"
        )));
    }
    if eta.abs() >= ETA_OVERFLOW_BOUND {
        return Err(Error::Domain(format!(
            "|eta| = {} overflows the delta weight exp(eta^2)",
            eta.abs()
        )));
    }
    Ok(ContinuousMode {
        eta,
        omega1,
        pv_coefficient: eta / SQRT_PI,
        lambda_at_eta: lambda_half(eta, omega1),
    })
}

/// The decaying discrete eigenmode
/// `h(x1, mu) = (1/sqrt(pi)) exp(-x1 z0 / eta0) eta0 / (eta0 - mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteMode {
    pub eta0: Complex64,
    pub omega1: Omega1,
}

impl DiscreteMode {
    /// `z0 = 1 - i omega1`.
    #[must_use]
    pub fn z0(&self) -> Complex64 {
        self.omega1.z0()
    }

    /// Spatial decay rate `z0 / eta0`; its real part is positive for the
    /// reported zero.
    #[must_use]
    pub fn decay(&self) -> Complex64 {
        self.omega1.z0() / self.eta0
    }

    /// Velocity profile at `x1 = 0`: `(1/sqrt(pi)) eta0 / (eta0 - mu)`.
    #[must_use]
    pub fn kernel_amplitude(&self, mu: f64) -> Complex64 {
        self.eta0 / (SQRT_PI * (self.eta0 - mu))
    }
}

/// Locate the discrete zero and wrap it as a unit-amplitude eigenmode.
///
/// # Errors
/// As for [`find_eta0`][crate::zeros::find_eta0].
pub fn discrete_mode(omega1: Omega1) -> Result<DiscreteMode> {
    let report = find_eta0(omega1)?;
    let eta0 = report.eta0.expect("subcritical report always carries the zero");
    Ok(DiscreteMode { eta0, omega1 })
}

/// The two zero-frequency solutions left behind when the discrete pair
/// escapes to infinity: the constant and the shear profile `x1 - mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateMode {
    Constant,
    Shear,
}

/// Both degenerate zero-frequency modes, constant first.
#[must_use]
pub fn degenerate_modes() -> (DegenerateMode, DegenerateMode) {
    (DegenerateMode::Constant, DegenerateMode::Shear)
}

// ---------------------------------------------------------------------------
// Solution evaluation
// ---------------------------------------------------------------------------

/// Anything that can be evaluated as a solution `h(x1, mu)` of the kinetic
/// equation at its own frequency.
pub trait SolutionEvaluator {
    /// Solution value at position `x1 >= 0`, velocity `mu`.
    fn eval(&self, x1: f64, mu: f64) -> Result<Complex64>;
    /// Partial derivative with respect to `x1`.
    fn eval_dx1(&self, x1: f64, mu: f64) -> Result<Complex64>;
    /// The frequency the solution oscillates at.
    fn frequency(&self) -> Omega1;
    /// Velocity magnitudes at which the profile is only piecewise
    /// smooth. Moment quadratures align their panels here so they never
    /// chase (or evaluate on top of) a kink.
    fn kink_points(&self) -> Vec<f64> {
        Vec::new()
    }
}

fn check_probe(x1: f64, mu: f64) -> Result<()> {
    if !(x1 >= 0.0) || !x1.is_finite() {
        return Err(Error::Domain(format!(
            "solutions live on the half-space x1 >= 0 (got {x1})"
        )));
    }
    if !mu.is_finite() {
        return Err(Error::Domain(format!("velocity must be finite (got {mu})")));
    }
    Ok(())
}

impl SolutionEvaluator for DiscreteMode {
    fn eval(&self, x1: f64, mu: f64) -> Result<Complex64> {
        check_probe(x1, mu)?;
        Ok((-x1 * self.decay()).exp() * self.kernel_amplitude(mu))
    }

    fn eval_dx1(&self, x1: f64, mu: f64) -> Result<Complex64> {
        Ok(-self.decay() * self.eval(x1, mu)?)
    }

    fn frequency(&self) -> Omega1 {
        self.omega1
    }
}

impl SolutionEvaluator for DegenerateMode {
    fn eval(&self, x1: f64, mu: f64) -> Result<Complex64> {
        check_probe(x1, mu)?;
        Ok(match self {
            DegenerateMode::Constant => Complex64::new(1.0, 0.0),
            DegenerateMode::Shear => Complex64::new(x1 - mu, 0.0),
        })
    }

    fn eval_dx1(&self, x1: f64, mu: f64) -> Result<Complex64> {
        check_probe(x1, mu)?;
        Ok(match self {
            DegenerateMode::Constant => Complex64::new(0.0, 0.0),
            DegenerateMode::Shear => Complex64::new(1.0, 0.0),
        })
    }

    fn frequency(&self) -> Omega1 {
        Omega1::new(0.0).expect("zero frequency is valid")
    }
}

// ---------------------------------------------------------------------------
// Mode expansions
// ---------------------------------------------------------------------------

/// A general solution: discrete amplitude `a0` plus a continuous density
/// `a(eta)` sampled on a positive grid.
///
/// The continuous density is interpolated piecewise-cubically between
/// nodes and treated as zero outside the grid span. When `a0` is nonzero
/// the discrete zero for the expansion's frequency is located once at
/// construction time.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeExpansion {
    omega1: Omega1,
    a0: Complex64,
    grid: Option<Grid>,
    a_values: Vec<Complex64>,
    eta0: Option<Complex64>,
}

impl ModeExpansion {
    /// Build an expansion from raw grid nodes and matching density
    /// samples. `grid_nodes` may be empty (no continuous part); otherwise
    /// it needs at least two strictly increasing nodes inside
    /// `(0, 12]`.
    ///
    /// # Errors
    /// `Grid` for malformed grids or length mismatches; the errors of
    /// [`find_eta0`][crate::zeros::find_eta0] when `a0 != 0` and the
    /// frequency carries no discrete zero.
    pub fn new(
        omega1: Omega1,
        a0: Complex64,
        grid_nodes: Vec<f64>,
        a_values: Vec<Complex64>,
    ) -> Result<Self> {
        if grid_nodes.len() != a_values.len() {
            return Err(Error::Grid(format!(
                "density has {} samples for {} grid nodes",
                a_values.len(),
                grid_nodes.len()
            )));
        }
        if a_values.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Grid("non-finite density sample".into()));
        }
        if !a0.re.is_finite() || !a0.im.is_finite() {
            return Err(Error::Grid("non-finite discrete amplitude".into()));
        }
        let grid = if grid_nodes.is_empty() {
            None
        } else {
            if grid_nodes.len() < 2 {
                return Err(Error::Grid(
                    "a continuous density needs at least two grid nodes".into(),
                ));
            }
            let g = Grid::from_nodes(grid_nodes)?;
            let (lo, hi) = g.span();
            if lo <= 0.0 || hi > GRID_ETA_MAX {
                return Err(Error::Grid(format!(
                    "expansion grid must lie inside (0, {GRID_ETA_MAX}] (got [{lo}, {hi}])"
                )));
            }
            Some(g)
        };
        let eta0 = if a0 != Complex64::new(0.0, 0.0) {
            Some(find_eta0(omega1)?.eta0.expect("subcritical report carries eta0"))
        } else {
            None
        };
        Ok(ModeExpansion { omega1, a0, grid, a_values, eta0 })
    }

    /// The pure-discrete template `a0 = 1`, `a = 0` on the given nodes —
    /// a useful starting point for fitting drivers.
    pub fn discrete_template(omega1: Omega1, grid_nodes: Vec<f64>) -> Result<Self> {
        let zeros = vec![Complex64::new(0.0, 0.0); grid_nodes.len()];
        Self::new(omega1, Complex64::new(1.0, 0.0), grid_nodes, zeros)
    }

    #[must_use]
    pub fn omega1(&self) -> Omega1 {
        self.omega1
    }

    #[must_use]
    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    #[must_use]
    pub fn grid(&self) -> Option<&Grid> {
        self.grid.as_ref()
    }

    #[must_use]
    pub fn a_values(&self) -> &[Complex64] {
        &self.a_values
    }

    /// The discrete zero backing the `a0` term, when present.
    #[must_use]
    pub fn eta0(&self) -> Option<Complex64> {
        self.eta0
    }

    fn has_continuous_part(&self) -> bool {
        self.grid.is_some() && self.a_values.iter().any(|a| a.norm_sqr() > 0.0)
    }

    /// Piecewise-cubic interpolation of the density; zero outside the
    /// grid span.
    fn density(&self, eta: f64) -> Complex64 {
        let Some(grid) = &self.grid else {
            return Complex64::new(0.0, 0.0);
        };
        let nodes = grid.nodes();
        let (lo, hi) = grid.span();
        if eta < lo || eta > hi {
            return Complex64::new(0.0, 0.0);
        }
        let idx = nodes.partition_point(|&n| n <= eta).min(nodes.len() - 1);
        // 4-point window around the bracketing pair, clamped at the ends
        let start = idx.saturating_sub(2).min(nodes.len().saturating_sub(4));
        let window = 4.min(nodes.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for i in start..start + window {
            let mut weight = 1.0;
            for j in start..start + window {
                if i != j {
                    weight *= (eta - nodes[j]) / (nodes[i] - nodes[j]);
                }
            }
            acc += weight * self.a_values[i];
        }
        acc
    }

    /// Shared core of `eval` / `eval_dx1`: `rate_power = 0` gives the
    /// solution, `1` its `x1` derivative (each kernel picks up a factor
    /// `-z0 / eta`).
    fn eval_inner(&self, x1: f64, mu: f64, rate_power: u32) -> Result<Complex64> {
        check_probe(x1, mu)?;
        let z0 = self.omega1.z0();
        let rate = |eta: Complex64| -> Complex64 {
            if rate_power == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                -z0 / eta
            }
        };
        let mut total = Complex64::new(0.0, 0.0);

        if self.a0 != Complex64::new(0.0, 0.0) {
            let eta0 = self.eta0.expect("nonzero a0 implies a located zero");
            total += self.a0 * rate(eta0) * (-x1 * z0 / eta0).exp() / (eta0 - mu);
        }

        if self.has_continuous_part() {
            let grid = self.grid.as_ref().expect("continuous part implies a grid");
            let (lo, hi) = grid.span();
            let margin = 1e-9 * hi.max(1.0);
            if (mu - lo).abs() < margin || (mu - hi).abs() < margin {
                return Err(Error::Grid(format!(
                    "evaluation velocity {mu} coincides with a grid edge; the \
                     principal-value subtraction degenerates there"
                )));
            }
            let kernel = |eta: f64| -> Complex64 {
                let eta_c = Complex64::new(eta, 0.0);
                rate(eta_c) * (-x1 * z0 / eta).exp() * eta * self.density(eta) / SQRT_PI
            };
            if mu > lo && mu < hi {
                // int kernel/(eta - mu) = -PV int kernel/(mu - eta)
                total -= pv_on_mesh(&kernel, mu, grid.nodes(), EXPANSION_TOL)?;
                let mu_c = Complex64::new(mu, 0.0);
                total += rate(mu_c)
                    * (-x1 * z0 / mu + mu * mu).exp()
                    * lambda_half(mu, self.omega1)
                    * self.density(mu);
            } else {
                total += adaptive_on_mesh(
                    &|eta: f64| kernel(eta) / (eta - mu),
                    grid.nodes(),
                    EXPANSION_TOL,
                )?;
            }
        }

        Ok(total)
    }
}

impl SolutionEvaluator for ModeExpansion {
    fn eval(&self, x1: f64, mu: f64) -> Result<Complex64> {
        self.eval_inner(x1, mu, 0)
    }

    fn eval_dx1(&self, x1: f64, mu: f64) -> Result<Complex64> {
        self.eval_inner(x1, mu, 1)
    }

    fn frequency(&self) -> Omega1 {
        self.omega1
    }

    fn kink_points(&self) -> Vec<f64> {
        // The interpolated density is only piecewise smooth: its
        // derivative jumps at every grid node, and the delta sheet
        // switches on and off at the span edges.
        match (&self.grid, self.has_continuous_part()) {
            (Some(g), true) => g.nodes().to_vec(),
            _ => Vec::new(),
        }
    }
}

/// Evaluate an assembled expansion at one point. Thin named wrapper over
/// [`SolutionEvaluator::eval`].
///
/// # Errors
/// `Domain` for `x1 < 0`; `Grid` when `mu` falls on a grid edge where the
/// principal-value subtraction degenerates; quadrature errors propagate.
pub fn assemble_solution(expansion: &ModeExpansion, x1: f64, mu: f64) -> Result<Complex64> {
    expansion.eval(x1, mu)
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

/// Defect of the kinetic balance
/// `mu dh/dx1 + z0 h - (1/sqrt(pi)) int exp(-m^2) h(x1, m) dm`
/// at one probe point; identically zero for exact solutions.
///
/// `tol` controls the moment quadrature; evaluation errors from `h`
/// propagate out.
pub fn kinetic_residual<S: SolutionEvaluator + ?Sized>(
    h: &S,
    x1: f64,
    mu: f64,
    tol: f64,
) -> Result<Complex64> {
    check_probe(x1, mu)?;
    let z0 = h.frequency().z0();
    let captured: RefCell<Option<Error>> = RefCell::new(None);
    let moment = integrate_gauss_halfline_with_breaks(
        |m: f64| {
            let both = h.eval(x1, m).and_then(|fwd| Ok(fwd + h.eval(x1, -m)?));
            match both {
                Ok(v) => v,
                Err(e) => {
                    captured.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        &h.kink_points(),
        tol,
    )?;
    if let Some(e) = captured.into_inner() {
        return Err(e);
    }
    Ok(mu * h.eval_dx1(x1, mu)? + z0 * h.eval(x1, mu)? - moment / SQRT_PI)
}

/// Complex velocity amplitude `u(x1)` of an expansion: the Gaussian
/// moment `(1/(2 sqrt(pi))) int exp(-mu^2) h(x1, mu) dmu` over the whole
/// velocity axis.
///
/// The Cauchy kernels integrate in closed form against the Gaussian —
/// the principal-value and delta contributions of the continuous part
/// collapse — leaving
///
/// ```text
/// u(x1) = a0 z0 exp(-x1 z0/eta0) / (2 eta0)
///         + (z0 / (2 sqrt(pi))) int exp(-x1 z0/eta) a(eta) deta,
/// ```
///
/// which is what this computes (no nested principal values).
///
/// # Errors
/// Quadrature errors propagate; `Domain` for `x1 < 0`.
pub fn velocity_amplitude(expansion: &ModeExpansion, x1: f64, tol: f64) -> Result<Complex64> {
    check_probe(x1, 0.0)?;
    let z0 = expansion.omega1.z0();
    let mut u = Complex64::new(0.0, 0.0);
    if expansion.a0 != Complex64::new(0.0, 0.0) {
        let eta0 = expansion.eta0.expect("nonzero a0 implies a located zero");
        u += expansion.a0 * z0 * (-x1 * z0 / eta0).exp() / (2.0 * eta0);
    }
    if expansion.has_continuous_part() {
        let grid = expansion.grid.as_ref().expect("continuous part");
        let integral = adaptive_on_mesh(
            &|eta: f64| (-x1 * z0 / eta).exp() * expansion.density(eta),
            grid.nodes(),
            tol,
        )?;
        u += z0 * integral / (2.0 * SQRT_PI);
    }
    Ok(u)
}

/// Physical transverse velocity `U_y(x1, t1) = Re(exp(-i omega1 t1) u(x1))`.
///
/// # Errors
/// As for [`velocity_amplitude`]; `Domain` for non-finite `t1`.
pub fn velocity_moment(expansion: &ModeExpansion, x1: f64, t1: f64, tol: f64) -> Result<f64> {
    if !t1.is_finite() {
        return Err(Error::Domain(format!("time must be finite (got {t1})")));
    }
    let u = velocity_amplitude(expansion, x1, tol)?;
    let phase = Complex64::new(0.0, -expansion.omega1.value() * t1).exp();
    Ok((phase * u).re)
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

impl ModeExpansion {
    /// Canonical single-line JSON: keys `a`, `a0`, `grid`, `omega1` in
    /// lexicographic order, every float in 15-digit scientific notation,
    /// complex numbers as `[re, im]` pairs. Byte-stable across runs.
    #[must_use]
    pub fn to_json_string(&self) -> String {
        let grid_nodes: Vec<JsonValue> = self
            .grid
            .as_ref()
            .map(|g| g.nodes().iter().map(|&n| JsonValue::Float(n)).collect())
            .unwrap_or_default();
        let densities: Vec<JsonValue> =
            self.a_values.iter().map(|&a| JsonValue::complex(a)).collect();
        JsonValue::Object(vec![
            ("omega1".into(), JsonValue::Float(self.omega1.value())),
            ("a0".into(), JsonValue::complex(self.a0)),
            ("grid".into(), JsonValue::Array(grid_nodes)),
            ("a".into(), JsonValue::Array(densities)),
        ])
        .render()
    }

    /// Parse the JSON produced by [`ModeExpansion::to_json_string`].
    ///
    /// # Errors
    /// `Parse` for syntax errors, missing or unknown keys, or malformed
    /// fields; construction errors as for [`ModeExpansion::new`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid expansion JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expansion JSON must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "a" | "a0" | "grid" | "omega1") {
                return Err(Error::Parse(format!("unknown expansion field {key:?}")));
            }
        }
        let omega1_raw = obj
            .get("omega1")
            .and_then(serde_json::Value::as_f64)
            .ok_or_else(|| Error::Parse("missing or non-numeric \"omega1\"".into()))?;
        let omega1 = Omega1::new(omega1_raw)?;
        let a0 = parse_complex(
            obj.get("a0")
                .ok_or_else(|| Error::Parse("missing \"a0\"".into()))?,
        )?;
        let grid_nodes: Vec<f64> = obj
            .get("grid")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("missing or non-array \"grid\"".into()))?
            .iter()
            .map(|v| {
                v.as_f64()
                    .ok_or_else(|| Error::Parse("non-numeric grid node".into()))
            })
            .collect::<Result<_>>()?;
        let a_values: Vec<Complex64> = obj
            .get("a")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("missing or non-array \"a\"".into()))?
            .iter()
            .map(parse_complex)
            .collect::<Result<_>>()?;
        Self::new(omega1, a0, grid_nodes, a_values)
    }
}

fn parse_complex(v: &serde_json::Value) -> Result<Complex64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("complex values must be [re, im] pairs".into()))?;
    let re = pair[0]
        .as_f64()
        .ok_or_else(|| Error::Parse("non-numeric real part".into()))?;
    let im = pair[1]
        .as_f64()
        .ok_or_else(|| Error::Parse("non-numeric imaginary part".into()))?;
    Ok(Complex64::new(re, im))
}
