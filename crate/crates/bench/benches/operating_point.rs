use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kerramp_core::eigen::solve_bright_gain;
use kerramp_core::experiments::presets::{reference_point, reference_system};
use kerramp_core::fluctuations::{analyze, diffusion_matrix, drift_matrix};
use kerramp_core::langevin::lyapunov_covariance;
use kerramp_core::steady::{solve_steady_states, Quadrature};

fn operating_point(c: &mut Criterion) {
    let mut p = reference_system(1e-4);
    p.kappa_g = 0.0;
    c.bench_function("solve_bright_gain", |b| b.iter(|| solve_bright_gain(black_box(&p))));

    let pt = reference_point(0.5, 1e-4);
    c.bench_function("solve_steady_states", |b| b.iter(|| solve_steady_states(black_box(&pt))));

    let st = solve_steady_states(&pt).unwrap()[0];
    c.bench_function("analyze", |b| {
        b.iter(|| analyze(black_box(&pt), &st, Quadrature::Output, 0.0))
    });

    let theta = st.theta_s;
    let r = drift_matrix(&pt.system, &st, theta);
    let d = diffusion_matrix(&pt.system, theta);
    c.bench_function("lyapunov_covariance", |b| {
        b.iter(|| lyapunov_covariance(black_box(&r), black_box(&d)))
    });
}

criterion_group!(benches, operating_point);
criterion_main!(benches);
