//! Numerical oracles shared by the integration suites.
//!
//! Everything here is deliberately independent of the library's own
//! quadrature engine — plain adaptive Simpson with Richardson error
//! control and a from-scratch phase tracker — so that agreement with
//! production code is evidence rather than self-confirmation.
#![allow(dead_code)]

use num_complex::Complex64;

pub const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Deterministic 64-bit LCG for reproducible pseudo-random probe points.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform sample in `[lo, hi)`.
    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Adaptive Simpson quadrature on `[a, b]` for a complex integrand.
pub fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let h = b - a;
        let left = (h / 12.0) * (fa + 4.0 * flm + fm);
        let right = (h / 12.0) * (fm + 4.0 * frm + fb);
        let sum = left + right;
        if depth == 0 || (sum - whole).norm() < 15.0 * tol {
            return sum + (sum - whole) / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Brute-force evaluation of the Gaussian-weighted Cauchy integral
///
/// ```text
/// 1 + (z / sqrt(pi)) * int_{-12}^{12} exp(-t^2) / (t - z) dt
/// ```
///
/// for `z` off the real axis. The truncation at `|t| = 12` is far below
/// every tolerance used here (`exp(-144)`). The interval is split at
/// `Re z`, where the integrand peaks when `z` sits close to the axis.
pub fn lambda0_oracle(z: Complex64) -> Complex64 {
    let f = |t: f64| Complex64::new((-t * t).exp(), 0.0) / (Complex64::new(t, 0.0) - z);
    let cut = z.re.clamp(-12.0, 12.0);
    let integral = simpson(&f, -12.0, cut, 5e-13) + simpson(&f, cut, 12.0, 5e-13);
    Complex64::new(1.0, 0.0) + z / SQRT_PI * integral
}

/// The real-axis shared part via the bounded single-integral form
/// `1 - 2 mu^2 int_0^1 exp(-mu^2 (1 - u^2)) du`.
pub fn lambda0_real_oracle(mu: f64) -> f64 {
    let m2 = mu * mu;
    let f = |u: f64| Complex64::new((-m2 * (1.0 - u * u)).exp(), 0.0);
    1.0 - 2.0 * m2 * simpson(&f, 0.0, 1.0, 1e-15).re
}

/// Principal value `PV int_a^b f(mu) / (pole - mu) dmu` by symmetric
/// excision. Excision converges linearly in the excision radius
/// (error `2 eps f'(pole)`), so one first-order Richardson step leaves
/// an `O(eps^3)` defect — about `1e-11` at these radii.
///
/// Each excised piece is integrated after the substitution
/// `mu = pole ± exp(t)`, which cancels the `1/(pole - mu)` growth
/// exactly and leaves Simpson a smooth integrand:
///
/// ```text
/// int_{pole+eps}^{b} f(mu)/(pole-mu) dmu = -int_{ln eps}^{ln(b-pole)} f(pole+e^t) dt
/// int_{a}^{pole-eps} f(mu)/(pole-mu) dmu = +int_{ln eps}^{ln(pole-a)} f(pole-e^t) dt
/// ```
pub fn pv_excision_oracle<F: Fn(f64) -> f64>(f: &F, pole: f64, a: f64, b: f64) -> f64 {
    assert!(a < pole && pole < b);
    let reduced = |eps: f64| {
        let below = simpson(
            &|t: f64| Complex64::new(f(pole - t.exp()), 0.0),
            eps.ln(),
            (pole - a).ln(),
            2e-13,
        );
        let above = simpson(
            &|t: f64| Complex64::new(f(pole + t.exp()), 0.0),
            eps.ln(),
            (b - pole).ln(),
            2e-13,
        );
        (below - above).re
    };
    2.0 * reduced(1e-4) - reduced(2e-4)
}

/// Count the zeros of `f` inside the axis-aligned rectangle with
/// corners `lo` and `hi` by accumulating the argument of `f` around the
/// boundary (counter-clockwise) with adaptive step halving.
///
/// Panics if the winding refuses to settle near an integer or a zero
/// sits (numerically) on the contour itself.
pub fn rectangle_zero_count<F: Fn(Complex64) -> Complex64>(
    f: &F,
    lo: Complex64,
    hi: Complex64,
) -> usize {
    assert!(lo.re < hi.re && lo.im < hi.im);
    let corners = [
        lo,
        Complex64::new(hi.re, lo.im),
        hi,
        Complex64::new(lo.re, hi.im),
        lo,
    ];
    let mut total = 0.0;
    for pair in corners.windows(2) {
        total += arg_change(f, pair[0], pair[1]);
    }
    let turns = total / std::f64::consts::TAU;
    let n = turns.round();
    assert!(
        (turns - n).abs() < 1e-3,
        "winding did not settle near an integer: {turns}"
    );
    assert!(n >= 0.0, "negative winding {n} for an analytic function");
    n as usize
}

fn arg_change<F: Fn(Complex64) -> Complex64>(f: &F, a: Complex64, b: Complex64) -> f64 {
    // Pre-chop into short segments first: the adaptive halving below
    // looks only at endpoint phases, and a long segment whose endpoints
    // happen to agree would silently swallow a full turn made in its
    // interior (for instance when the segment passes close to a zero).
    const MAX_SEGMENT: f64 = 0.02;
    let pieces = ((b - a).norm() / MAX_SEGMENT).ceil().max(1.0) as usize;
    let mut total = 0.0;
    let mut splits = 0usize;
    let mut stack = Vec::with_capacity(pieces + 16);
    let mut prev = (a, f(a));
    for k in 1..=pieces {
        let t = k as f64 / pieces as f64;
        let zk = a + (b - a) * t;
        let fk = f(zk);
        stack.push((prev.0, zk, prev.1, fk));
        prev = (zk, fk);
    }
    while let Some((za, zb, fa, fb)) = stack.pop() {
        let step = (fb / fa).arg();
        if step.abs() < 1.0 {
            total += step;
            continue;
        }
        assert!(
            (zb - za).norm() > 1e-12,
            "phase jump persists at segment scale 1e-12: a zero sits on the contour"
        );
        splits += 1;
        assert!(splits < 1 << 20, "phase tracking exhausted its budget");
        let m = 0.5 * (za + zb);
        let fm = f(m);
        stack.push((za, m, fa, fm));
        stack.push((m, zb, fm, fb));
    }
    total
}
