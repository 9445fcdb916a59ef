use kerramp_core::experiments::{
    bandwidth, detuning_sweep, gain_sweep, gbp_sweep, hysteresis_check, linspace, noise_sweep,
    presets::{reference_point, CURVES},
    BandwidthOptions, SweepAxis, SweepSpec,
};
use kerramp_core::langevin::integrate_mean_field;
use kerramp_core::steady::lowest_stable;
use kerramp_core::{Complex64, IntegrationConfig};

#[test]
fn larger_kerr_trades_gain_for_bandwidth() {
    let opts = BandwidthOptions::default();
    let strong = bandwidth(&reference_point(0.5, 1e-4), &opts).unwrap();
    let weak = bandwidth(&reference_point(0.5, 5e-5), &opts).unwrap();
    assert!(strong.delta_omega > weak.delta_omega);
    assert!(strong.g_s_peak < weak.g_s_peak);
}

#[test]
fn bandwidth_is_grid_independent() {
    let pt = reference_point(0.5, 1e-4);
    let fine = bandwidth(&pt, &BandwidthOptions::default()).unwrap();
    let coarse = bandwidth(
        &pt,
        &BandwidthOptions {
            points: 1001,
            ..Default::default()
        },
    )
    .unwrap();
    assert!((fine.delta_omega - coarse.delta_omega).abs() < 0.01 * fine.delta_omega);
}

#[test]
fn gbp_falls_with_drive() {
    for k in [1e-4, 5e-5] {
        let rows = gbp_sweep(
            &reference_point(0.3, k),
            &[0.3, 0.5, 0.7, 1.0],
            &BandwidthOptions::default(),
        )
        .unwrap();
        assert!(rows.windows(2).all(|w| w[1].band.gbp < w[0].band.gbp));
        assert!(rows.iter().all(|r| r.kerr == k && r.band.islands.len() < 4));
    }
}

#[test]
fn stronger_kerr_widens_the_low_noise_detuning_window() {
    let width = |k| {
        let t = detuning_sweep(reference_point(0.5, k), linspace(-2.0, 2.0, 2001)).unwrap();
        t.rows.iter().filter(|r| r.stable && r.f_db() < 0.0).count()
    };
    assert!(width(1e-4) > width(5e-5));
}

#[test]
fn reference_curves_order_at_the_bright_gain() {
    let at = |(n, k): (f64, f64)| {
        let t = gain_sweep(reference_point(n, k), vec![0.85]).unwrap();
        t.rows[0].g_s_db()
    };
    let g: Vec<f64> = CURVES.iter().map(|&c| at(c)).collect();
    assert!(g[1] > g[0] && g[1] > g[2]);
}

#[test]
fn no_gain_means_no_noise_advantage() {
    for (n, k) in CURVES {
        let t = noise_sweep(reference_point(n, k), vec![0.25]).unwrap();
        assert!(t.rows[0].stable && t.rows[0].f_db() >= 0.0);
    }
}

#[test]
fn kappa_g_sweeps_are_free_of_hysteresis() {
    for (n, k) in CURVES {
        let spec = SweepSpec::new(SweepAxis::KappaG, linspace(0.25, 0.9, 131), reference_point(n, k));
        let rep = hysteresis_check(&spec).unwrap();
        assert_eq!(rep.multistable_points, 0);
        assert!(rep.max_relative_gap < 1e-10);
    }
}

#[test]
fn mean_field_tracks_cubic_root_for_both_kerr_values() {
    let zero = Complex64::new(0.0, 0.0);
    for k in [1e-4, 5e-5] {
        let pt = reference_point(0.5, k);
        let x = lowest_stable(&pt).unwrap().unwrap().intensity;
        let traj = integrate_mean_field(&pt, &IntegrationConfig::default(), (zero, zero)).unwrap();
        assert!((traj.terminal_intensity() - x).abs() / x < 1e-8);
    }
}
