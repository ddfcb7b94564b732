//! Hot-path benchmarks: kernel evaluation in each region, boundary
//! values, quadratures, curve tracing, and zero location.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use stokes_spectra::dispersion::{boundary_values, lambda0, lambda0_real, Omega1};
use stokes_spectra::numerics::{integrate_gauss_halfline, pv_integral};
use stokes_spectra::spectra::{index_kappa, trace_gamma, TraceControls};
use stokes_spectra::zeros::find_eta0;

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    let points = [
        ("upper_near_axis", Complex64::new(0.8, 0.05)),
        ("upper_bulk", Complex64::new(1.2, 1.5)),
        ("lower_bulk", Complex64::new(-0.7, -2.0)),
        ("far_field", Complex64::new(14.0, 9.0)),
    ];
    for (name, z) in points {
        group.bench_with_input(BenchmarkId::new("lambda0", name), &z, |b, &z| {
            b.iter(|| lambda0(std::hint::black_box(z)).unwrap())
        });
    }
    group.bench_function("lambda0_real", |b| {
        b.iter(|| lambda0_real(std::hint::black_box(0.9)))
    });
    let om = Omega1::new(0.5).unwrap();
    group.bench_function("boundary_values", |b| {
        b.iter(|| boundary_values(std::hint::black_box(0.9), om).unwrap())
    });
    group.finish();
}

fn bench_quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadrature");
    group.bench_function("gauss_halfline", |b| {
        b.iter(|| {
            integrate_gauss_halfline(
                |mu| Complex64::new((0.3 * mu).cos(), mu / (1.0 + mu * mu)),
                1e-10,
            )
            .unwrap()
        })
    });
    group.bench_function("pv_integral", |b| {
        b.iter(|| {
            pv_integral(
                |mu| Complex64::new((-mu * mu).exp(), 0.0),
                std::hint::black_box(0.9),
                1e-10,
            )
            .unwrap()
        })
    });
    group.finish();
}

fn bench_spectra(c: &mut Criterion) {
    let om = Omega1::new(0.5).unwrap();
    let mut group = c.benchmark_group("spectra");
    group.sample_size(20);
    group.bench_function("trace_gamma", |b| {
        b.iter(|| trace_gamma(om, 8.0, &TraceControls::default()).unwrap())
    });
    group.bench_function("index_kappa", |b| b.iter(|| index_kappa(om).unwrap()));
    group.bench_function("find_eta0", |b| b.iter(|| find_eta0(om).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_kernel, bench_quadrature, bench_spectra);
criterion_main!(benches);
