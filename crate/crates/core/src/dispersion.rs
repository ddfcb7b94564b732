//! The dispersion function of the driven kinetic half-space problem and its
//! boundary values on the real axis.
//!
//! Everything here is built from one analytic object,
//!
//! ```text
//! lambda0(z) = 1 + z * Z(z),        Z(z) = i sqrt(pi) w(z)   (upper half-plane)
//! ```
//!
//! extended to the lower half-plane by the reflection
//! `lambda0(z) = conj(lambda0(conj z))`. That extension is piecewise
//! analytic with a jump across the real axis; the one-sided limits are
//! exposed as [`boundary_values`]. The full dispersion function adds the
//! driving frequency: `lambda(z) = -i omega1 + lambda0(z)`.

use crate::error::{Error, Result};
use crate::faddeeva::{self, SQRT_PI};
use num_complex::Complex64;

/// Relative half-width of the excluded strip around the real axis:
/// points with `|Im z| < AXIS_TOL * max(1, |Re z|)` are treated as being
/// on the cut, where only one-sided boundary values make sense.
pub const AXIS_TOL: f64 = 1e-13;

/// Nondimensional oscillation frequency (`>= 0`, finite).
///
/// Wraps the raw float so downstream code can rely on validity, and owns
/// the derived constant `z0 = 1 - i omega1` that sets every exponential
/// decay rate in the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Omega1(f64);

impl Omega1 {
    /// # Errors
    /// `Domain` if the value is negative, NaN, or infinite.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Domain(format!(
                "frequency must be finite and nonnegative (got {value})"
            )));
        }
        Ok(Omega1(value))
    }

    #[must_use]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `z0 = 1 - i omega1`, the complex decay-rate constant.
    #[must_use]
    pub fn z0(self) -> Complex64 {
        Complex64::new(1.0, -self.0)
    }
}

impl std::fmt::Display for Omega1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Is `z` inside the excluded strip around the real axis?
#[must_use]
pub fn on_axis(z: Complex64) -> bool {
    z.im.abs() < AXIS_TOL * z.re.abs().max(1.0)
}

/// Plasma-dispersion-style kernel `Z(z)`, valid off the real axis.
/// Upper half-plane: `i sqrt(pi) w(z)`; lower: reflection `conj(Z(conj z))`.
pub(crate) fn z_function(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        Complex64::new(0.0, SQRT_PI) * faddeeva::w(z)
    } else {
        (Complex64::new(0.0, SQRT_PI) * faddeeva::w(z.conj())).conj()
    }
}

/// `lambda0(z) = 1 + z Z(z)` off the real axis.
///
/// # Errors
/// `Domain` when `z` lies in the [`AXIS_TOL`] strip — use
/// [`boundary_values`] / [`lambda0_real`] there instead.
pub fn lambda0(z: Complex64) -> Result<Complex64> {
    if on_axis(z) {
        return Err(Error::Domain(format!(
            "{z} lies on the real-axis cut; use the one-sided boundary values"
        )));
    }
    Ok(1.0 + z * z_function(z))
}

/// Derivative `lambda0'(z) = Z(z) - 2 z lambda0(z)`, from the kernel ODE
/// `Z'(z) = -2 (1 + z Z(z))`.
///
/// # Errors
/// `Domain` on the axis strip, as for [`lambda0`].
pub fn lambda0_prime(z: Complex64) -> Result<Complex64> {
    let l0 = lambda0(z)?;
    Ok(z_function(z) - 2.0 * z * l0)
}

/// Shared real part of both one-sided boundary values on the axis:
/// `1 - 2 mu D(mu)` with `D` the Dawson integral. Even in `mu`, exact 1 at
/// the origin, one real root at the Dawson peak.
#[must_use]
pub fn lambda0_real(mu: f64) -> f64 {
    1.0 - 2.0 * mu * faddeeva::dawson(mu)
}

/// Gaussian jump amplitude `s(mu) = sqrt(pi) mu exp(-mu^2)`; half the
/// imaginary-part jump of `lambda0` across the axis at `mu`.
///
/// # Errors
/// `Domain` for negative `mu` (the jump is defined on the positive axis;
/// use the parity of the curve rather than reflected arguments).
pub fn s(mu: f64) -> Result<f64> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "jump amplitude is defined for mu >= 0 (got {mu})"
        )));
    }
    Ok(SQRT_PI * mu * (-mu * mu).exp())
}

/// One-sided limits of the full dispersion function on the cut at `mu > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPair {
    pub mu: f64,
    /// Limit from the upper half-plane.
    pub lambda_plus: Complex64,
    /// Limit from the lower half-plane.
    pub lambda_minus: Complex64,
}

impl BoundaryPair {
    /// `lambda_plus - lambda_minus = 2 i sqrt(pi) mu exp(-mu^2)`.
    #[must_use]
    pub fn jump(&self) -> Complex64 {
        self.lambda_plus - self.lambda_minus
    }

    /// Mean of the two limits; the natural axis value of the dispersion
    /// function where a symmetric weight is needed.
    #[must_use]
    pub fn half_sum(&self) -> Complex64 {
        0.5 * (self.lambda_plus + self.lambda_minus)
    }
}

/// Boundary values `lambda_pm(mu) = lambda0_real(mu) + i(+-s(mu) - omega1)`
/// of the dispersion function on the positive real axis.
///
/// # Errors
/// `Domain` unless `mu > 0`.
pub fn boundary_values(mu: f64, omega1: Omega1) -> Result<BoundaryPair> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "boundary values are defined for mu > 0 (got {mu})"
        )));
    }
    let re = lambda0_real(mu);
    let s_mu = s(mu)?;
    let w = omega1.value();
    Ok(BoundaryPair {
        mu,
        lambda_plus: Complex64::new(re, s_mu - w),
        lambda_minus: Complex64::new(re, -s_mu - w),
    })
}

/// Full dispersion function `lambda(z) = -i omega1 + lambda0(z)`.
///
/// # Errors
/// `Domain` on the axis strip, as for [`lambda0`].
pub fn lambda(z: Complex64, omega1: Omega1) -> Result<Complex64> {
    Ok(Complex64::new(0.0, -omega1.value()) + lambda0(z)?)
}

/// Signed coefficients of the large-|z| tail of `lambda0`:
/// `lambda0(z) ~ -1/(2 z^2) - 3/(4 z^4) - 15/(8 z^6) - ...`,
/// each next coefficient multiplied by `(2k + 1)/2`.
pub(crate) const TAIL_COEFF: [f64; 3] = [-0.5, -0.75, -1.875];

/// Truncated large-argument expansion of `lambda(z)`: the constant
/// `-i omega1` plus up to three inverse-even-power terms.
///
/// # Errors
/// `Domain` if `terms` is not in `1..=3`, or `|z| < 4` where the tail is
/// not a usable approximation.
pub fn laurent_tail(z: Complex64, omega1: Omega1, terms: usize) -> Result<Complex64> {
    if terms == 0 || terms > TAIL_COEFF.len() {
        return Err(Error::Domain(format!(
            "tail truncation must use 1..=3 terms (got {terms})"
        )));
    }
    if z.norm() < 4.0 {
        return Err(Error::Domain(format!(
            "tail expansion needs |z| >= 4 (got |z| = {})",
            z.norm()
        )));
    }
    let inv_z2 = 1.0 / (z * z);
    let mut power = inv_z2;
    let mut acc = Complex64::new(0.0, -omega1.value());
    for &c in TAIL_COEFF.iter().take(terms) {
        acc += c * power;
        power *= inv_z2;
    }
    Ok(acc)
}
