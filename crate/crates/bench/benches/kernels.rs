//! Hot-path benchmarks: one two-level evolution, the channel double sum,
//! the closed-form assembly and the special-function kernels behind it.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kzosc_core::furry::{p_fp_adiabatic, p_fp_exact};
use kzosc_core::pt::{p_pt, SumTruncation};
use kzosc_core::specfun::{kummer_m_regularized, parabolic_cylinder_d, tricomi_u};
use kzosc_core::tdse::{survival_probability, DriveParams, IntegrationConfig};
use num_complex::Complex64 as C64;

fn drive() -> DriveParams {
    DriveParams::new(0.2, 0.5, 0.0, 0.2, 2.0).unwrap()
}

fn bench_tdse(c: &mut Criterion) {
    let p = drive();
    let mut cfg = IntegrationConfig::default_for(p.omega);
    cfg.tau_start = -50.0;
    cfg.tau_end = 50.0;
    let mut g = c.benchmark_group("tdse");
    g.sample_size(10);
    g.bench_function("survival_pm50", |b| {
        b.iter(|| survival_probability(black_box(&p), &cfg).unwrap())
    });
    g.finish();
}

fn bench_closed_forms(c: &mut Criterion) {
    let p = drive();
    let trunc = SumTruncation::new(10).unwrap();
    let pk = DriveParams::new(0.75, 0.5, 0.0, 0.1, 3.0).unwrap();
    let mut g = c.benchmark_group("closed_forms");
    g.bench_function("pt_double_sum_n10", |b| {
        b.iter(|| p_pt(black_box(&p), trunc).unwrap())
    });
    g.bench_function("fp_exact", |b| {
        b.iter(|| p_fp_exact(black_box(&pk), -500.0, 500.0).unwrap())
    });
    g.bench_function("fp_adiabatic", |b| {
        b.iter(|| p_fp_adiabatic(black_box(&pk)).unwrap())
    });
    g.finish();
}

fn bench_specfun(c: &mut Criterion) {
    let a = C64::new(0.0, -0.5625);
    let z = C64::new(0.0, 36.0);
    let mut g = c.benchmark_group("specfun");
    g.bench_function("kummer_regularized_b0", |b| {
        b.iter(|| kummer_m_regularized(black_box(a), C64::new(0.0, 0.0), z).unwrap())
    });
    g.bench_function("tricomi_u", |b| {
        b.iter(|| tricomi_u(black_box(a), C64::new(1.0, 0.0), C64::new(0.0, 9.0)).unwrap())
    });
    g.bench_function("parabolic_cylinder_d", |b| {
        b.iter(|| {
            parabolic_cylinder_d(
                black_box(C64::new(0.0, 0.5625)),
                C64::new(10.0, 10.0) / 2.0f64.sqrt(),
            )
            .unwrap()
        })
    });
    g.finish();
}

criterion_group!(kernels, bench_tdse, bench_closed_forms, bench_specfun);
criterion_main!(kernels);
