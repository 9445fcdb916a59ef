use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kerramp_core::experiments::presets::reference_point;
use kerramp_core::experiments::{bandwidth, gain_sweep, linspace, BandwidthOptions};
use kerramp_core::langevin::integrate_linear_sde;
use kerramp_core::fluctuations::{diffusion_matrix, drift_matrix};
use kerramp_core::steady::solve_steady_states;
use kerramp_core::IntegrationConfig;

fn sweeps(c: &mut Criterion) {
    let pt = reference_point(0.5, 1e-4);
    c.bench_function("gain_sweep_401", |b| {
        b.iter(|| gain_sweep(black_box(pt), linspace(0.25, 1.25, 401)))
    });

    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("bandwidth_2001", |b| {
        b.iter(|| bandwidth(black_box(&pt), &BandwidthOptions::default()))
    });

    let st = solve_steady_states(&pt).unwrap()[0];
    let r = drift_matrix(&pt.system, &st, st.theta_s);
    let d = diffusion_matrix(&pt.system, st.theta_s);
    let cfg = IntegrationConfig {
        dt: 5e-4,
        t_max: 100.0,
        min_batches: 8,
        ..Default::default()
    };
    group.bench_function("linear_sde_2e5_steps", |b| {
        b.iter(|| integrate_linear_sde(black_box(&r), &d, &cfg))
    });
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
