//! Independent checks on the steady-state and fluctuation results: explicit
//! time integration of the nonlinear mean-field equations, a direct Lyapunov
//! solve for the stationary covariance, and a Monte-Carlo integrator for the
//! linear fluctuation SDE.

use nalgebra::{Matrix4, SMatrix, SVector, SymmetricEigen, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::fluctuations::{max_growth_rate, DiffusionMatrix, DriftMatrix, STABILITY_MARGIN};
use crate::util::c;
use crate::{Complex64, Error, OperatingPoint, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    /// Time step in units of `1 / kappa_b`.
    pub dt: f64,
    pub t_max: f64,
    pub n_traj: usize,
    pub seed: u64,
    /// Fraction of each trajectory discarded before averaging.
    pub burn_in: f64,
    /// Lower bound on the total number of batch means.
    pub min_batches: usize,
    /// Mean-field runs abort once `|<a>|^2` exceeds this.
    pub divergence_threshold: f64,
    /// Mean-field trajectories keep every n-th step (the last step is always kept).
    pub record_every: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_max: 500.0,
            n_traj: 1,
            seed: 0,
            burn_in: 0.1,
            min_batches: 32,
            divergence_threshold: 1e12,
            record_every: 1000,
        }
    }
}

impl IntegrationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_max >= self.dt) {
            return bad(format!("t_max ({}) must be at least dt", self.t_max));
        }
        if self.n_traj == 0 {
            return bad("n_traj must be >= 1".into());
        }
        if !(0.0..1.0).contains(&self.burn_in) {
            return bad(format!("burn_in must lie in [0, 1), got {}", self.burn_in));
        }
        if self.min_batches == 0 {
            return bad("min_batches must be >= 1".into());
        }
        if self.record_every == 0 {
            return bad("record_every must be >= 1".into());
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.t_max / self.dt).round() as usize
    }

    /// The largest step the Euler-Maruyama integrator accepts for a drift with
    /// the given spectral radius.
    pub fn max_sde_step(spectral_radius: f64) -> f64 {
        1e-3 / spectral_radius
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldTrajectory {
    pub t: Vec<f64>,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl MeanFieldTrajectory {
    pub fn terminal(&self) -> (Complex64, Complex64) {
        (*self.a.last().unwrap(), *self.b.last().unwrap())
    }

    pub fn terminal_intensity(&self) -> f64 {
        self.terminal().0.norm_sqr()
    }
}

fn mean_field_rhs(point: &OperatingPoint, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let p = &point.system;
    let h = p.hamiltonian();
    let drive = (2.0 * p.kappa_b).sqrt() * point.drive.epsilon_in(p.kappa_b);
    let mi = c(0.0, -1.0);
    let da = mi * ((h[0][0] + 2.0 * p.kerr * a.norm_sqr()) * a + h[0][1] * b);
    let db = mi * (h[1][0] * a + h[1][1] * b) + drive;
    (da, db)
}

/// Fixed-step RK4 integration of the nonlinear mean-field equations.
pub fn integrate_mean_field(
    point: &OperatingPoint,
    config: &IntegrationConfig,
    initial: (Complex64, Complex64),
) -> Result<MeanFieldTrajectory> {
    config.validate()?;
    point.validate()?;
    let dt = config.dt;
    let steps = config.steps();
    let (mut a, mut b) = initial;
    let mut traj = MeanFieldTrajectory {
        t: vec![0.0],
        a: vec![a],
        b: vec![b],
    };
    for n in 1..=steps {
        let (k1a, k1b) = mean_field_rhs(point, a, b);
        let (k2a, k2b) = mean_field_rhs(point, a + 0.5 * dt * k1a, b + 0.5 * dt * k1b);
        let (k3a, k3b) = mean_field_rhs(point, a + 0.5 * dt * k2a, b + 0.5 * dt * k2b);
        let (k4a, k4b) = mean_field_rhs(point, a + dt * k3a, b + dt * k3b);
        a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        let t = n as f64 * dt;
        let intensity = a.norm_sqr();
        if !(intensity <= config.divergence_threshold) {
            return Err(Error::Diverged {
                time: t,
                threshold: config.divergence_threshold,
            });
        }
        if n % config.record_every == 0 || n == steps {
            traj.t.push(t);
            traj.a.push(a);
            traj.b.push(b);
        }
    }
    Ok(traj)
}

/// Upper-triangle index pairs of a symmetric 4x4 matrix.
const SYM_PAIRS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

/// Solves `R V + V R^T + D = 0` for symmetric `V` as a 10-unknown linear system.
pub fn lyapunov_covariance(r: &DriftMatrix, d: &DiffusionMatrix) -> Result<Matrix4<f64>> {
    let max_re = max_growth_rate(r);
    if !(max_re < -STABILITY_MARGIN) {
        return Err(Error::UnstableDrift { max_re });
    }
    let mut a = SMatrix::<f64, 10, 10>::zeros();
    for (col, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        let mut e = Matrix4::zeros();
        e[(i, j)] = 1.0;
        e[(j, i)] = 1.0;
        let img = r.r * e + e * r.r.transpose();
        for (row, &(k, l)) in SYM_PAIRS.iter().enumerate() {
            a[(row, col)] = img[(k, l)];
        }
    }
    let rhs = SVector::<f64, 10>::from_iterator(SYM_PAIRS.iter().map(|&(k, l)| -d.d[(k, l)]));
    let x = a.lu().solve(&rhs).ok_or(Error::UnstableDrift { max_re })?;
    let mut v = Matrix4::zeros();
    for (idx, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        v[(i, j)] = x[idx];
        v[(j, i)] = x[idx];
    }
    Ok(v)
}

pub fn lyapunov_residual(r: &DriftMatrix, d: &DiffusionMatrix, v: &Matrix4<f64>) -> f64 {
    (r.r * v + v * r.r.transpose() + d.d).norm()
}

/// Time- and ensemble-averaged second moments with batch-means error bars.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    pub v_hat: Matrix4<f64>,
    pub stderr: Matrix4<f64>,
    pub n_batches: usize,
}

fn noise_factor(d: &DiffusionMatrix) -> Result<Matrix4<f64>> {
    let eig = SymmetricEigen::new(d.d);
    let scale = d.d.norm().max(1e-300);
    let min = eig.eigenvalues.min();
    if min < -1e-12 * scale {
        return Err(Error::NonPsdDiffusion {
            min_eigenvalue: min,
        });
    }
    let sqrt = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    Ok(eig.eigenvectors * Matrix4::from_diagonal(&sqrt) * eig.eigenvectors.transpose())
}

/// Largest eigenvalue modulus of the drift.
pub fn spectral_radius(r: &DriftMatrix) -> f64 {
    r.r.complex_eigenvalues()
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max)
}

/// Sizes a covariance run from the drift: `dt` at the step limit, 20
/// relaxation times of burn-in and 1600 of averaging, which puts the
/// batch-means error of the slowest mode's variance near 3.5%.
pub fn covariance_config(r: &DriftMatrix, seed: u64) -> Result<IntegrationConfig> {
    let max_re = max_growth_rate(r);
    if !(max_re < -STABILITY_MARGIN) {
        return Err(Error::UnstableDrift { max_re });
    }
    let gamma = -max_re;
    let burn = 20.0 / gamma;
    let t_max = burn + 1600.0 / gamma;
    Ok(IntegrationConfig {
        dt: IntegrationConfig::max_sde_step(spectral_radius(r)),
        t_max,
        n_traj: 1,
        seed,
        burn_in: burn / t_max,
        min_batches: 64,
        ..Default::default()
    })
}

/// Euler-Maruyama integration of `du = R u dt + B dW` with `B B^T = D`.
///
/// Trajectory `k` draws from ChaCha stream `k` of `seed`, so results do not
/// depend on how trajectories are scheduled across threads.
pub fn integrate_linear_sde(
    r: &DriftMatrix,
    d: &DiffusionMatrix,
    config: &IntegrationConfig,
) -> Result<CovarianceEstimate> {
    config.validate()?;
    let max_re = max_growth_rate(r);
    if !(max_re < -STABILITY_MARGIN) {
        return Err(Error::UnstableDrift { max_re });
    }
    let b = noise_factor(d)?;
    let limit = IntegrationConfig::max_sde_step(spectral_radius(r));
    if config.dt > limit * (1.0 + 1e-12) {
        return Err(Error::InvalidConfig(format!(
            "dt = {} exceeds 1e-3 / spectral radius = {limit}",
            config.dt
        )));
    }
    let steps = config.steps();
    let burn = (config.burn_in * steps as f64).floor() as usize;
    let per_traj = config.min_batches.div_ceil(config.n_traj);
    let batch_len = (steps - burn) / per_traj;
    if batch_len == 0 {
        return Err(Error::InvalidConfig(
            "too few post-burn-in steps for the requested batches".into(),
        ));
    }
    let drift = Matrix4::identity() + r.r * config.dt;
    let noise = b * config.dt.sqrt();

    let batches: Vec<Vec<Matrix4<f64>>> = (0..config.n_traj)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let mut u = Vector4::zeros();
            let mut step = |u: &mut Vector4<f64>| {
                let xi = Vector4::from_fn(|_, _| StandardNormal.sample(&mut rng));
                *u = drift * *u + noise * xi;
            };
            for _ in 0..burn {
                step(&mut u);
            }
            (0..per_traj)
                .map(|_| {
                    let mut acc = Matrix4::zeros();
                    for _ in 0..batch_len {
                        step(&mut u);
                        acc += u * u.transpose();
                    }
                    acc / batch_len as f64
                })
                .collect()
        })
        .collect();

    let all: Vec<Matrix4<f64>> = batches.into_iter().flatten().collect();
    let n = all.len() as f64;
    let mean = all.iter().fold(Matrix4::zeros(), |s, m| s + m) / n;
    let var = all
        .iter()
        .fold(Matrix4::zeros(), |s, m| s + (m - mean).component_mul(&(m - mean)))
        / (n - 1.0).max(1.0);
    Ok(CovarianceEstimate {
        v_hat: mean,
        stderr: var.map(|x| (x / n).sqrt()),
        n_batches: all.len(),
    })
}
