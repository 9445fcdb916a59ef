//! Subcommands: each turns a [`RunConfig`] into one [`Table`].

use anyhow::{bail, Context, Result};
use kerramp_core::eigen::{
    bright_drive_frequency, eigen_coefficients, eigenfrequencies, solve_bright_gain,
};
use kerramp_core::experiments::{
    bandwidth, bright_quadrature, detuning_sweep, gbp_sweep, kappa_a_sweep, run_sweep,
    BandwidthOptions, BandwidthResult, SweepAxis, SweepSpec, SweepTable,
};
use kerramp_core::fluctuations::{analyze, diffusion_matrix, drift_matrix};
use kerramp_core::langevin::{covariance_config, integrate_linear_sde, lyapunov_covariance};
use kerramp_core::steady::{lowest_stable, solve_steady_states, Quadrature};
use kerramp_core::{to_db, OperatingPoint};

use crate::config::RunConfig;
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Gain rate and drive frequency that make the lower eigenmode lossless.
    BrightPoint,
    /// All mean-field fixed points with their gain and noise figures.
    SteadyState,
    /// Signal gain versus kappa_g.
    GainSweep,
    /// Signal gain, noise gain and noise figure versus kappa_g.
    NoiseSweep,
    /// Bright-point figures versus kappa_a at fixed net gain.
    KappaASweep,
    /// Response versus drive detuning from the configured drive frequency.
    DetuningSweep,
    /// Operational bandwidth and gain-bandwidth product.
    Bandwidth,
    /// Bandwidth and gain-bandwidth product versus N_in.
    Gbp,
    /// Lyapunov covariance against a Monte-Carlo estimate.
    McValidate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BrightPoint => "bright-point",
            Command::SteadyState => "steady-state",
            Command::GainSweep => "gain-sweep",
            Command::NoiseSweep => "noise-sweep",
            Command::KappaASweep => "kappa-a-sweep",
            Command::DetuningSweep => "detuning-sweep",
            Command::Bandwidth => "bandwidth",
            Command::Gbp => "gbp",
            Command::McValidate => "mc-validate",
        }
    }
}

/// Operating point with an absent `kappa_g` or `omega_d` filled in from the
/// bright-point solution.
pub fn operating_point(cfg: &RunConfig) -> Result<OperatingPoint> {
    let mut pt = cfg.partial_point();
    if cfg.needs_bright_completion() {
        let kappa_g = match cfg.system.kappa_g {
            Some(g) => g,
            None => {
                solve_bright_gain(&pt.system)
                    .context("kappa_g is not set and no bright point exists")?
                    .kappa_g_star
            }
        };
        pt.system.kappa_g = kappa_g;
        if cfg.system.omega_d.is_none() {
            pt.system.omega_d = bright_drive_frequency(&pt.system, kappa_g);
        }
    }
    pt.validate()?;
    Ok(pt)
}

fn sweep_quadrature(cfg: &RunConfig, baseline: &OperatingPoint) -> Quadrature {
    match cfg.probe.theta {
        Some(t) => Quadrature::Fixed(t),
        None => bright_quadrature(baseline),
    }
}

fn point_quadrature(cfg: &RunConfig) -> Quadrature {
    cfg.probe.theta.map_or(Quadrature::Output, Quadrature::Fixed)
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Table> {
    let out = match command {
        Command::BrightPoint => bright_point(cfg),
        Command::SteadyState => steady_state(cfg),
        Command::GainSweep => kappa_g_sweep(cfg, false),
        Command::NoiseSweep => kappa_g_sweep(cfg, true),
        Command::KappaASweep => kappa_a(cfg),
        Command::DetuningSweep => detuning(cfg),
        Command::Bandwidth => band(cfg),
        Command::Gbp => gbp(cfg),
        Command::McValidate => mc_validate(cfg),
    };
    out.with_context(|| format!("{} failed", command.name()))
}

fn bright_point(cfg: &RunConfig) -> Result<Table> {
    let p = cfg.partial_point().system;
    let bp = solve_bright_gain(&p)?;
    let at = bp.apply(&p);
    let co = eigen_coefficients(&at);
    let mut t = Table::new(&[
        "kappa_g_star",
        "omega_d_star",
        "kappa_n",
        "C1",
        "C2",
        "omega_minus_re",
        "omega_minus_im",
    ]);
    let w = eigenfrequencies(&at).minus;
    t.push(vec![
        bp.kappa_g_star.into(),
        bp.omega_d_star.into(),
        bp.kappa_n.into(),
        co.c1.into(),
        co.c2.into(),
        w.re.into(),
        w.im.into(),
    ]);
    Ok(t)
}

fn steady_state(cfg: &RunConfig) -> Result<Table> {
    let pt = operating_point(cfg)?;
    let states = solve_steady_states(&pt)?;
    let mut t = Table::new(&[
        "root", "intensity", "a_re", "a_im", "b_re", "b_im", "a_out_re", "a_out_im", "theta_s",
        "stable", "max_growth", "G_s_dB", "G_n_dB", "F_dB",
    ]);
    for (i, s) in states.iter().enumerate() {
        let (gs, gn, f) = match analyze(&pt, s, point_quadrature(cfg), cfg.probe.omega) {
            Ok(n) => (to_db(n.g_s), to_db(n.g_n), to_db(n.f)),
            Err(_) => (f64::NAN, f64::NAN, f64::NAN),
        };
        t.push(vec![
            i.into(),
            s.intensity.into(),
            s.a_mean.re.into(),
            s.a_mean.im.into(),
            s.b_mean.re.into(),
            s.b_mean.im.into(),
            s.a_out_mean.re.into(),
            s.a_out_mean.im.into(),
            s.theta_s.into(),
            s.stable.into(),
            s.max_growth.into(),
            gs.into(),
            gn.into(),
            f.into(),
        ]);
    }
    Ok(t)
}

fn kappa_g_sweep(cfg: &RunConfig, noise: bool) -> Result<Table> {
    let base = operating_point(cfg)?;
    let mut spec = SweepSpec::new(SweepAxis::KappaG, cfg.sweep.grid(0.25, 1.25, 401), base);
    spec.quadrature = sweep_quadrature(cfg, &base);
    spec.omega = cfg.probe.omega;
    let table = run_sweep(&spec)?;
    report_multistability(&table);
    let mut t = if noise {
        Table::new(&["kappa_g", "intensity", "G_s_dB", "G_n_dB", "F_dB", "stable"])
    } else {
        Table::new(&["kappa_g", "intensity", "G_s_dB", "stable"])
    };
    for r in &table.rows {
        let mut row: Vec<Cell> = vec![r.value.into(), r.intensity.into(), r.g_s_db().into()];
        if noise {
            row.extend([Cell::from(r.g_n_db()), Cell::from(r.f_db())]);
        }
        row.push(r.stable.into());
        t.push(row);
    }
    Ok(t)
}

fn report_multistability(table: &SweepTable) {
    if table.multistable() {
        eprintln!(
            "warning: {} grid point(s) have several stable branches; rows follow the branch reached by continuation",
            table.rows.iter().filter(|r| r.n_stable > 1).count()
        );
    }
}

fn kappa_a(cfg: &RunConfig) -> Result<Table> {
    let base = operating_point(cfg)?;
    let rows = kappa_a_sweep(base, cfg.sweep.grid(0.05, 0.5, 401))?;
    let mut t = Table::new(&[
        "kappa_a",
        "kappa_g",
        "G_s_bm_dB",
        "G_n_bm_dB",
        "F_bm_dB",
        "F_high_gain_dB",
        "F_numeric_dB",
        "stable",
    ]);
    for r in rows {
        t.push(vec![
            r.kappa_a.into(),
            r.kappa_g.into(),
            to_db(r.g_s_bm).into(),
            to_db(r.g_n_bm).into(),
            to_db(r.f_bm).into(),
            to_db(r.f_high_gain).into(),
            to_db(r.f_numeric).into(),
            (r.max_growth < 0.0).into(),
        ]);
    }
    Ok(t)
}

fn detuning(cfg: &RunConfig) -> Result<Table> {
    let base = operating_point(cfg)?;
    let table = match cfg.probe.theta {
        None if cfg.probe.omega == 0.0 => detuning_sweep(base, cfg.sweep.grid(-2.0, 2.0, 2001))?,
        _ => {
            let mut spec =
                SweepSpec::new(SweepAxis::Detuning, cfg.sweep.grid(-2.0, 2.0, 2001), base);
            spec.quadrature = sweep_quadrature(cfg, &base);
            spec.omega = cfg.probe.omega;
            spec.origin = Some(0.0);
            run_sweep(&spec)?
        }
    };
    report_multistability(&table);
    let mut t = Table::new(&[
        "delta", "omega_d", "intensity", "G_s_dB", "G_n_dB", "F_dB", "stable", "n_stable",
    ]);
    for r in &table.rows {
        t.push(vec![
            r.value.into(),
            (base.system.omega_d + r.value).into(),
            r.intensity.into(),
            r.g_s_db().into(),
            r.g_n_db().into(),
            r.f_db().into(),
            r.stable.into(),
            r.n_stable.into(),
        ]);
    }
    Ok(t)
}

const BAND_COLUMNS: &[&str] = &[
    "n_in",
    "kerr",
    "delta_lo",
    "delta_hi",
    "delta_omega",
    "peak_delta",
    "G_s_peak_dB",
    "gbp",
    "islands",
];

fn band_row(n_in: f64, kerr: f64, b: &BandwidthResult) -> Vec<Cell> {
    vec![
        n_in.into(),
        kerr.into(),
        b.interval.0.into(),
        b.interval.1.into(),
        b.delta_omega.into(),
        b.peak_delta.into(),
        to_db(b.g_s_peak).into(),
        b.gbp.into(),
        b.islands.len().into(),
    ]
}

fn band_options(cfg: &RunConfig) -> BandwidthOptions {
    BandwidthOptions {
        span: cfg.bandwidth.span,
        points: cfg.bandwidth.points,
        omega: cfg.probe.omega,
    }
}

fn band(cfg: &RunConfig) -> Result<Table> {
    let base = operating_point(cfg)?;
    let b = bandwidth(&base, &band_options(cfg))?;
    let mut t = Table::new(BAND_COLUMNS);
    t.push(band_row(base.drive.n_in, base.system.kerr, &b));
    Ok(t)
}

fn gbp(cfg: &RunConfig) -> Result<Table> {
    let base = operating_point(cfg)?;
    let rows = gbp_sweep(&base, &cfg.gbp.n_in, &band_options(cfg))?;
    let mut t = Table::new(BAND_COLUMNS);
    for r in rows {
        t.push(band_row(r.n_in, r.kerr, &r.band));
    }
    Ok(t)
}

fn mc_validate(cfg: &RunConfig) -> Result<Table> {
    let base = operating_point(cfg)?;
    let quad = sweep_quadrature(cfg, &base);
    let mut t = Table::new(&[
        "delta", "i", "j", "v_lyapunov", "v_mc", "stderr", "z_score", "n_batches",
    ]);
    for &delta in &cfg.mc.delta {
        let pt = SweepAxis::Detuning.apply(&base, delta);
        let Some(state) = lowest_stable(&pt)? else {
            bail!("no stable steady state at delta = {delta}");
        };
        let theta = quad.angle(&state, &pt.drive);
        let r = drift_matrix(&pt.system, &state, theta);
        let d = diffusion_matrix(&pt.system, theta);
        let v = lyapunov_covariance(&r, &d)?;
        let mut ic = covariance_config(&r, cfg.mc.seed)?;
        ic.n_traj = cfg.mc.n_traj;
        ic.min_batches = cfg.mc.min_batches;
        if let Some(dt) = cfg.mc.dt {
            ic.dt = dt;
        }
        if let Some(t_max) = cfg.mc.t_max {
            ic.t_max = t_max;
        }
        if let Some(b) = cfg.mc.burn_in {
            ic.burn_in = b;
        }
        let mc = integrate_linear_sde(&r, &d, &ic)
            .with_context(|| format!("Monte-Carlo run at delta = {delta}"))?;
        for i in 0..4 {
            for j in i..4 {
                let se = mc.stderr[(i, j)];
                t.push(vec![
                    delta.into(),
                    i.into(),
                    j.into(),
                    v[(i, j)].into(),
                    mc.v_hat[(i, j)].into(),
                    se.into(),
                    ((mc.v_hat[(i, j)] - v[(i, j)]) / se).into(),
                    mc.n_batches.into(),
                ]);
            }
        }
    }
    Ok(t)
}
