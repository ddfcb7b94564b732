//! Discrete spectrum of the dispersion function: counting its zeros off
//! the real axis and locating the decaying one.
//!
//! Zeros come in pairs `{eta0, -eta0}` by the parity of the dispersion
//! function, so the count is twice the winding index of the boundary
//! curve. In the subcritical band a Newton iteration from the
//! small-frequency asymptotic seed `eta0 ~ (1 + i)/(2 sqrt(omega1))`
//! converges in a handful of steps; a Muller sweep over the first
//! quadrant backs it up. The reported zero is the member of the pair with
//! `Re(z0 / eta0) > 0`, the one whose mode decays away from the wall.

use crate::dispersion::{lambda, lambda0_prime, on_axis, Omega1};
use crate::error::{Error, Result};
use crate::spectra::{critical_frequency, index_kappa, CRITICAL_BAND};
use num_complex::Complex64;

/// Where a frequency sits relative to the critical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `omega1 = 0`: the zero pair degenerates to infinity and the
    /// discrete modes collapse to the constant/shear pair.
    DegenerateZeroFrequency,
    /// `0 < omega1 < omega1_star - band`: discrete pair present below the
    /// through-origin frequency, merging toward the axis above it.
    Subcritical,
    /// Within [`CRITICAL_BAND`] of the critical frequency.
    Boundary,
    /// Above the critical band: no discrete spectrum.
    Supercritical,
}

impl Regime {
    /// Stable snake_case name used in reports.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Regime::DegenerateZeroFrequency => "degenerate_zero_frequency",
            Regime::Subcritical => "subcritical",
            Regime::Boundary => "boundary",
            Regime::Supercritical => "supercritical",
        }
    }
}

/// Outcome of a discrete-spectrum search at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumReport {
    pub omega1: Omega1,
    /// Number of zeros off the axis (always even by parity).
    pub zero_count: u32,
    /// The decaying zero, when one exists.
    pub eta0: Option<Complex64>,
    pub regime: Regime,
    /// `|lambda(eta0)|` at the reported zero.
    pub residual: Option<f64>,
}

/// Classify a frequency against the critical value.
#[must_use]
pub fn classify_regime(omega1: Omega1) -> Regime {
    let w = omega1.value();
    if w == 0.0 {
        return Regime::DegenerateZeroFrequency;
    }
    let w_star = critical_frequency();
    if (w - w_star).abs() < CRITICAL_BAND {
        Regime::Boundary
    } else if w < w_star {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}

/// Number of zeros of the dispersion function off the real axis, as twice
/// the boundary-curve winding index.
///
/// # Errors
/// As for [`index_kappa`].
pub fn count_zeros(omega1: Omega1) -> Result<u32> {
    let kappa = index_kappa(omega1)?;
    if kappa < 0 {
        return Err(Error::Unwrap { turns: f64::from(kappa) });
    }
    Ok(2 * kappa as u32)
}

/// Absolute residual below which a Newton/Muller iterate counts as a zero.
const RESIDUAL_TOL: f64 = 1e-10;

/// Imaginary nudge applied when an iterate drifts into the axis strip.
const AXIS_NUDGE: f64 = 1e-10;

fn keep_off_axis(z: Complex64) -> Complex64 {
    if on_axis(z) {
        Complex64::new(z.re, AXIS_NUDGE)
    } else {
        z
    }
}

/// Newton iteration on the dispersion function from `seed`.
fn newton(seed: Complex64, omega1: Omega1) -> Option<Complex64> {
    let mut z = keep_off_axis(seed);
    for _ in 0..100 {
        let f = lambda(z, omega1).ok()?;
        if f.norm() < RESIDUAL_TOL {
            return Some(z);
        }
        let df = lambda0_prime(z).ok()?;
        if df.norm() < 1e-300 {
            return None;
        }
        z = keep_off_axis(z - f / df);
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1e6 {
            return None;
        }
    }
    None
}

/// Muller's method from a seed triple; derivative-free fallback.
fn muller(seed: Complex64, omega1: Omega1) -> Option<Complex64> {
    let mut x0 = keep_off_axis(seed);
    let mut x1 = keep_off_axis(seed + Complex64::new(0.1, 0.0));
    let mut x2 = keep_off_axis(seed + Complex64::new(0.0, 0.1));
    let mut f0 = lambda(x0, omega1).ok()?;
    let mut f1 = lambda(x1, omega1).ok()?;
    let mut f2 = lambda(x2, omega1).ok()?;
    for _ in 0..100 {
        if f2.norm() < RESIDUAL_TOL {
            return Some(x2);
        }
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        if h1.norm() < 1e-300 || h2.norm() < 1e-300 {
            return None;
        }
        let d1 = (f1 - f0) / h1;
        let d2 = (f2 - f1) / h2;
        let a = (d2 - d1) / (h2 + h1);
        let b = a * h2 + d2;
        let disc = (b * b - 4.0 * f2 * a).sqrt();
        let den = if (b + disc).norm() > (b - disc).norm() { b + disc } else { b - disc };
        if den.norm() < 1e-300 {
            return None;
        }
        let x3 = keep_off_axis(x2 - 2.0 * f2 / den);
        if !x3.re.is_finite() || !x3.im.is_finite() || x3.norm() > 1e6 {
            return None;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = lambda(x2, omega1).ok()?;
    }
    None
}

/// Pick the member of the parity pair whose mode decays away from the
/// wall: `Re(z0 / eta0) > 0`.
fn decaying_representative(z: Complex64, omega1: Omega1) -> Complex64 {
    if (omega1.z0() / z).re > 0.0 {
        z
    } else {
        -z
    }
}

/// Locate the decaying discrete zero at a subcritical frequency.
///
/// Strategy: Newton from the asymptotic seed `(1 + i)/(2 sqrt(omega1))`,
/// then a Muller sweep over first-quadrant seeds if Newton strays. When
/// both fail, the winding index arbitrates between "no discrete spectrum
/// at this frequency" and a genuine convergence failure.
///
/// # Errors
/// `Domain` at zero frequency (the pair degenerates; use the degenerate
/// modes); `BoundaryIndeterminate` in the critical band;
/// `NoDiscreteSpectrum` when the winding index vanishes;
/// `Convergence` when a zero should exist but neither solver lands on it.
pub fn find_eta0(omega1: Omega1) -> Result<SpectrumReport> {
    match classify_regime(omega1) {
        Regime::DegenerateZeroFrequency => {
            return Err(Error::Domain(
                "at zero frequency the zero pair degenerates to infinity; \
                 the discrete modes reduce to the constant and shear solutions"
                    .into(),
            ));
        }
        Regime::Boundary => {
            return Err(Error::BoundaryIndeterminate {
                omega1: omega1.value(),
                detail: format!(
                    "frequency is within {CRITICAL_BAND:.0e} of the critical value \
                     {:.6}; the discrete pair merges with the axis here",
                    critical_frequency()
                ),
            });
        }
        Regime::Supercritical => {
            return Err(Error::NoDiscreteSpectrum { omega1: omega1.value() });
        }
        Regime::Subcritical => {}
    }

    let w = omega1.value();
    let seed = Complex64::new(1.0, 1.0) / (2.0 * w.sqrt());
    let mut root = newton(seed, omega1);
    if root.is_none() {
        'sweep: for i in 0..8 {
            for j in 0..8 {
                let s = Complex64::new(0.25 + 0.5 * f64::from(i), 0.25 + 0.5 * f64::from(j));
                if let Some(z) = muller(s, omega1) {
                    root = Some(z);
                    break 'sweep;
                }
            }
        }
    }

    match root {
        Some(z) => {
            let eta0 = decaying_representative(z, omega1);
            let residual = lambda(eta0, omega1)?.norm();
            if residual >= RESIDUAL_TOL {
                return Err(Error::Convergence(format!(
                    "root candidate {eta0} fails the residual check ({residual:.2e})"
                )));
            }
            // A located zero plus its parity mate pins the count at 2;
            // the winding index never exceeds 1 for this function.
            Ok(SpectrumReport {
                omega1,
                zero_count: 2,
                eta0: Some(eta0),
                regime: Regime::Subcritical,
                residual: Some(residual),
            })
        }
        None => match count_zeros(omega1) {
            Ok(0) => Err(Error::NoDiscreteSpectrum { omega1: w }),
            Ok(_) => Err(Error::Convergence(format!(
                "the winding index reports a zero pair at omega1 = {w}, but neither \
                 Newton nor the Muller sweep converged to it"
            ))),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn w(v: f64) -> Omega1 {
        Omega1::new(v).unwrap()
    }

    // (omega1, eta0_re, eta0_im) — frozen from high-precision Newton runs
    // on the dispersion function.
    const ETA0_TABLE: [(f64, f64, f64); 4] = [
        (0.1, 1.785_415_302_049_560_8, 1.329_568_621_195_593),
        (0.3, 1.193_318_388_296_319_6, 0.486_379_774_400_502),
        (0.5, 1.016_668_054_671_346, 0.179_372_001_205_764_37),
        (0.6, 0.964_042_181_523_871_8, 0.079_252_451_209_387_95),
    ];

    #[test]
    fn regimes_partition_the_frequency_axis() {
        assert_eq!(classify_regime(w(0.0)), Regime::DegenerateZeroFrequency);
        assert_eq!(classify_regime(w(0.5)), Regime::Subcritical);
        assert_eq!(classify_regime(w(2.0)), Regime::Supercritical);
        let w_star = critical_frequency();
        assert_eq!(classify_regime(w(w_star)), Regime::Boundary);
        assert_eq!(classify_regime(w(w_star - 4.9e-3)), Regime::Boundary);
        assert_eq!(classify_regime(w(w_star + 4.9e-3)), Regime::Boundary);
        assert_eq!(classify_regime(w(w_star - 5.1e-3)), Regime::Subcritical);
        assert_eq!(classify_regime(w(w_star + 5.1e-3)), Regime::Supercritical);
        assert_eq!(Regime::Subcritical.name(), "subcritical");
    }

    #[test]
    fn zero_count_doubles_the_winding_index() {
        assert_eq!(count_zeros(w(0.5)).unwrap(), 2);
        assert_eq!(count_zeros(w(1.0)).unwrap(), 0);
        for &wv in &[0.2, 0.4, 0.65, 0.72, 1.5] {
            let n = count_zeros(w(wv)).unwrap();
            let kappa = crate::spectra::index_kappa(w(wv)).unwrap();
            assert_eq!(n, 2 * kappa as u32);
        }
    }

    #[test]
    fn locates_reference_zeros() {
        for &(wv, re, im) in &ETA0_TABLE {
            let report = find_eta0(w(wv)).unwrap();
            let eta0 = report.eta0.unwrap();
            let want = Complex64::new(re, im);
            assert!(
                (eta0 - want).norm() < 1e-9,
                "omega1 = {wv}: eta0 = {eta0}, want {want}"
            );
            assert!(report.residual.unwrap() < 1e-10);
            assert_eq!(report.zero_count, 2);
            assert_eq!(report.regime, Regime::Subcritical);
        }
    }

    #[test]
    fn zero_satisfies_dispersion_equation_and_parity() {
        for &wv in &[0.1, 0.3, 0.5, 0.69] {
            let om = w(wv);
            let eta0 = find_eta0(om).unwrap().eta0.unwrap();
            assert!(lambda(eta0, om).unwrap().norm() < 1e-10);
            assert!(lambda(-eta0, om).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn reported_zero_is_the_decaying_one() {
        for &wv in &[0.1, 0.3, 0.5, 0.69] {
            let om = w(wv);
            let eta0 = find_eta0(om).unwrap().eta0.unwrap();
            assert!((om.z0() / eta0).re > 0.0, "omega1 = {wv}");
            assert!((om.z0() / -eta0).re < 0.0, "mate must grow");
        }
    }

    #[test]
    fn small_frequency_seed_is_accurate() {
        let om = w(0.01);
        let eta0 = find_eta0(om).unwrap().eta0.unwrap();
        let seed = Complex64::new(1.0, 1.0) / (2.0 * 0.01_f64.sqrt());
        let dev = (eta0 - seed).norm() / eta0.norm();
        assert!(dev < 0.05, "seed deviation {dev}");
        assert!(dev > 1e-4, "seed should not be exact");
        // the pair escapes to infinity as the frequency drops
        let big = find_eta0(w(0.005)).unwrap().eta0.unwrap().norm();
        let mid = find_eta0(w(0.02)).unwrap().eta0.unwrap().norm();
        let small = find_eta0(w(0.1)).unwrap().eta0.unwrap().norm();
        assert!(big > mid && mid > small);
        assert_relative_eq!(big, 1.0 / (2.0 * 0.005_f64).sqrt(), max_relative = 0.05);
    }

    #[test]
    fn zero_track_is_continuous_in_frequency() {
        let mut prev: Option<Complex64> = None;
        let mut wv = 0.05;
        while wv < 0.6951 {
            let eta0 = find_eta0(w(wv)).unwrap().eta0.unwrap();
            if let Some(p) = prev {
                assert!(
                    (eta0 - p).norm() < 0.25,
                    "jump at omega1 = {wv}: {p} -> {eta0}"
                );
            }
            prev = Some(eta0);
            wv += 0.005;
        }
    }

    #[test]
    fn zero_approaches_axis_at_the_through_origin_frequency() {
        let wo = crate::spectra::through_origin_frequency();
        let eta0 = find_eta0(w(wo - 1.5e-3)).unwrap().eta0.unwrap();
        assert!(eta0.im > 0.0 && eta0.im < 5e-3, "Im eta0 = {}", eta0.im);
        // just above: the pair has merged into the continuum
        assert!(matches!(
            find_eta0(w(wo + 1.5e-3)),
            Err(Error::NoDiscreteSpectrum { .. })
        ));
    }

    #[test]
    fn no_discrete_spectrum_between_origin_passage_and_critical_band() {
        // The winding index already vanishes on this span even though the
        // frequency is still below the critical value.
        for &wv in &[0.7, 0.71, 0.72] {
            let r = find_eta0(w(wv));
            assert!(
                matches!(r, Err(Error::NoDiscreteSpectrum { .. })),
                "omega1 = {wv}: {r:?}"
            );
        }
    }

    #[test]
    fn degenerate_boundary_and_supercritical_are_refused() {
        assert!(matches!(find_eta0(w(0.0)), Err(Error::Domain(_))));
        assert!(matches!(
            find_eta0(w(critical_frequency())),
            Err(Error::BoundaryIndeterminate { .. })
        ));
        assert!(matches!(
            find_eta0(w(2.0)),
            Err(Error::NoDiscreteSpectrum { omega1: _ })
        ));
    }

    #[test]
    fn muller_fallback_lands_on_the_same_zero() {
        let om = w(0.5);
        let z = muller(Complex64::new(1.2, 0.4), om).unwrap();
        let eta0 = decaying_representative(z, om);
        let want = find_eta0(om).unwrap().eta0.unwrap();
        assert!((eta0 - want).norm() < 1e-8);
    }
}
