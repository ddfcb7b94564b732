//! The boundary curve of the dispersion function, its winding index, and
//! the derived critical quantities.
//!
//! On the positive real axis the two one-sided limits of the dispersion
//! function combine into the ratio
//!
//! ```text
//! G(mu) = lambda_plus(mu) / lambda_minus(mu),
//! ```
//!
//! a closed curve starting and ending at 1 (as mu -> 0+ and mu -> inf).
//! Its winding number about the origin equals the index `kappa`, and the
//! number of zeros of the dispersion function off the axis is `2 kappa`
//! by the symmetry `lambda(-z) = lambda(z)`. The index drops from 1 to 0
//! as the frequency crosses the value where the curve passes through the
//! origin; see [`through_origin_frequency`] and the neighbouring
//! [`critical_frequency`] where the two positive roots of the tangency
//! function merge.

use crate::dispersion::{boundary_values, lambda0_real, s, Omega1};
use crate::error::{Error, Result};
use crate::numerics::{brent_root, golden_max};
use num_complex::Complex64;
use std::sync::OnceLock;

/// One traced point of the boundary-ratio curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSample {
    pub mu: f64,
    /// Curve value `G(mu)`.
    pub g: Complex64,
    /// Continuously unwrapped argument of `g`, starting at 0.
    pub theta: f64,
}

/// A full trace of the boundary-ratio curve over `(0, mu_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaCurve {
    pub omega1: Omega1,
    pub samples: Vec<GammaSample>,
    /// Net turns about the origin: final unwrapped argument over `2 pi`.
    pub total_turns: f64,
}

/// Knobs for [`trace_gamma`]. `Default` suits every frequency this crate
/// targets; loosen only for experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceControls {
    /// Points of the initial uniform sweep.
    pub initial_steps: usize,
    /// Largest accepted argument change between neighbouring samples;
    /// larger steps trigger bisection.
    pub arg_step_limit: f64,
    /// `|G|` below this is treated as passing through the origin, where
    /// the winding number is undefined.
    pub origin_tolerance: f64,
    /// Hard cap on stored samples.
    pub max_samples: usize,
}

impl Default for TraceControls {
    fn default() -> Self {
        TraceControls {
            initial_steps: 256,
            arg_step_limit: std::f64::consts::FRAC_PI_2,
            origin_tolerance: 1e-8,
            max_samples: 1 << 16,
        }
    }
}

/// Frequencies and their root pair of the tangency function
/// `y1(mu) = lambda0_real(mu)^2 - s(mu)^2 + omega1^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub omega1: Omega1,
    /// The two positive roots (`mu1 <= mu2`); `None` when the frequency
    /// exceeds the critical value and the curve no longer meets the
    /// imaginary axis symmetrically. The roots coincide at criticality.
    pub roots: Option<(f64, f64)>,
}

/// Boundary-ratio curve value `G(mu) = lambda_plus / lambda_minus`.
///
/// # Errors
/// `Domain` unless `mu > 0`; `SingularCoefficient` if the denominator
/// limit vanishes beyond recovery.
pub fn g_of_mu(mu: f64, omega1: Omega1) -> Result<Complex64> {
    let pair = boundary_values(mu, omega1)?;
    let denom = pair.lambda_minus;
    if denom.norm() < 1e-12 {
        return Err(Error::SingularCoefficient { mu });
    }
    Ok(pair.lambda_plus / denom)
}

/// Trace the curve over `(0, mu_max]` with adaptive argument unwrapping.
///
/// The trace starts from the exact limit `G(0+) = 1`, refines wherever the
/// argument turns faster than `controls.arg_step_limit`, and accumulates
/// the unwrapped argument into each sample.
///
/// # Errors
/// `BoundaryIndeterminate` if the curve passes within
/// `controls.origin_tolerance` of the origin; `Convergence` if refinement
/// would exceed `controls.max_samples`.
pub fn trace_gamma(omega1: Omega1, mu_max: f64, controls: &TraceControls) -> Result<GammaCurve> {
    if !(mu_max > 0.0) || !mu_max.is_finite() {
        return Err(Error::Domain(format!("mu_max must be positive (got {mu_max})")));
    }
    if controls.initial_steps < 2 {
        return Err(Error::Domain("trace needs at least 2 initial steps".into()));
    }
    let mut samples = Vec::with_capacity(controls.initial_steps + 1);
    samples.push(GammaSample { mu: 0.0, g: Complex64::new(1.0, 0.0), theta: 0.0 });

    // Pending targets in descending order so we always extend the last
    // accepted sample.
    let mut pending: Vec<f64> = (1..=controls.initial_steps)
        .rev()
        .map(|i| mu_max * i as f64 / controls.initial_steps as f64)
        .collect();

    while let Some(mu) = pending.pop() {
        let last = *samples.last().expect("trace always has a seed sample");
        let g = g_of_mu(mu, omega1)?;
        if g.norm() < controls.origin_tolerance {
            return Err(Error::BoundaryIndeterminate {
                omega1: omega1.value(),
                detail: format!(
                    "the boundary curve passes within {:.1e} of the origin at mu = {mu:.6}; \
                     the winding number is undefined at this frequency",
                    controls.origin_tolerance
                ),
            });
        }
        let step = (g / last.g).arg();
        if step.abs() > controls.arg_step_limit && mu - last.mu > 1e-12 {
            // refine: revisit this target after the midpoint
            pending.push(mu);
            pending.push(0.5 * (mu + last.mu));
            continue;
        }
        if samples.len() >= controls.max_samples {
            return Err(Error::Convergence(format!(
                "trace exceeded {} samples before reaching mu_max = {mu_max}",
                controls.max_samples
            )));
        }
        samples.push(GammaSample { mu, g, theta: last.theta + step });
    }

    let total_turns = samples.last().expect("non-empty").theta / std::f64::consts::TAU;
    Ok(GammaCurve { omega1, samples, total_turns })
}

/// Round a traced turn count to the nearest integer, rejecting traces that
/// failed to close up.
pub(crate) fn round_turns(turns: f64) -> Result<i32> {
    let nearest = turns.round();
    if (turns - nearest).abs() > 0.05 {
        return Err(Error::Unwrap { turns });
    }
    Ok(nearest as i32)
}

/// Winding index `kappa` of the boundary curve about the origin.
///
/// # Errors
/// `BoundaryIndeterminate` within `5e-3` of [`critical_frequency`] (the
/// merging tangency makes the answer numerically meaningless there) or if
/// the trace passes through the origin; `Unwrap` if the turn count does
/// not come out near an integer.
pub fn index_kappa(omega1: Omega1) -> Result<i32> {
    let w_star = critical_frequency();
    if (omega1.value() - w_star).abs() < CRITICAL_BAND {
        return Err(Error::BoundaryIndeterminate {
            omega1: omega1.value(),
            detail: format!(
                "frequency sits within {CRITICAL_BAND:.0e} of the critical value \
                 {w_star:.6}; the index is indeterminate in this band"
            ),
        });
    }
    let curve = trace_gamma(omega1, 8.0, &TraceControls::default())?;
    round_turns(curve.total_turns)
}

/// Half-width of the frequency band around [`critical_frequency`] where
/// [`index_kappa`] refuses to answer.
pub const CRITICAL_BAND: f64 = 5e-3;

/// Location of the single positive root of `lambda0_real`, i.e. the peak
/// of the Dawson integral; cached after the first call.
#[must_use]
pub fn mu0() -> f64 {
    static MU0: OnceLock<f64> = OnceLock::new();
    *MU0.get_or_init(|| {
        brent_root(&lambda0_real, 0.5, 1.5, 1e-14)
            .expect("lambda0_real changes sign once on [0.5, 1.5]")
    })
}

/// The tangency envelope `q(mu) = s(mu)^2 - lambda0_real(mu)^2`; the
/// largest frequency with real tangency points is `sqrt(max q)`.
fn envelope(mu: f64) -> f64 {
    let sv = s(mu).expect("envelope is evaluated at mu >= 0");
    let lr = lambda0_real(mu);
    sv * sv - lr * lr
}

/// `(omega1_star, mu_star)`: the critical frequency together with the
/// location of the envelope maximum; cached after the first call.
#[must_use]
pub fn critical_point() -> (f64, f64) {
    static CRIT: OnceLock<(f64, f64)> = OnceLock::new();
    *CRIT.get_or_init(|| {
        // coarse scan to isolate the global maximum, then golden refinement
        let mut best_mu = 0.5;
        let mut best = f64::MIN;
        for i in 1..3000 {
            let mu = i as f64 * 1e-3;
            let v = envelope(mu);
            if v > best {
                best = v;
                best_mu = mu;
            }
        }
        let mu_star = golden_max(&envelope, best_mu - 2e-3, best_mu + 2e-3, 1e-12);
        ((envelope(mu_star)).sqrt(), mu_star)
    })
}

/// Largest frequency at which the tangency function still has real
/// positive roots; the index band around it is indeterminate.
#[must_use]
pub fn critical_frequency() -> f64 {
    critical_point().0
}

/// Frequency at which the boundary curve passes through the origin —
/// `s(mu0)`, since the curve can only cross the real axis where the shared
/// real part of the boundary values vanishes. The winding index drops from
/// 1 to 0 across this frequency.
#[must_use]
pub fn through_origin_frequency() -> f64 {
    static W_ORIGIN: OnceLock<f64> = OnceLock::new();
    *W_ORIGIN.get_or_init(|| s(mu0()).expect("mu0 is positive"))
}

/// The tangency function `y1(mu) = lambda0_real(mu)^2 - s(mu)^2 + omega1^2`
/// whose positive roots bracket the through-origin point.
pub(crate) fn y1(mu: f64, omega1: Omega1) -> f64 {
    let w = omega1.value();
    w * w - envelope(mu)
}

/// Both positive roots of the tangency function on `(0, 6)`.
///
/// Subcritical frequencies yield two simple roots straddling the envelope
/// maximum; at the critical frequency they merge; above it there are no
/// real roots and `roots` is `None`.
#[must_use]
pub fn y1_roots(omega1: Omega1) -> RootPair {
    let (w_star, mu_star) = critical_point();
    let gap = w_star * w_star - omega1.value() * omega1.value();
    if gap <= 0.0 {
        return RootPair { omega1, roots: None };
    }
    if gap < 1e-12 {
        return RootPair { omega1, roots: Some((mu_star, mu_star)) };
    }
    let f = |mu: f64| y1(mu, omega1);
    // y1(0+) = 1 + w^2 > 0 > y1(mu_star), and y1(6) > 0 again.
    let lo = brent_root(&f, 1e-9, mu_star, 1e-12);
    let hi = brent_root(&f, mu_star, 6.0, 1e-12);
    match (lo, hi) {
        (Ok(a), Ok(b)) => RootPair { omega1, roots: Some((a, b)) },
        _ => RootPair { omega1, roots: None },
    }
}
