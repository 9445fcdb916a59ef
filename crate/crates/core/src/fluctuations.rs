//! Linearized quadrature fluctuations around a mean-field steady state.
//!
//! The fluctuation vector is `u = (dX_a, dY_a, dX_b, dY_b)` at quadrature
//! angle `theta` and obeys `du/dt = R u + sigma`.

use nalgebra::{Matrix4, RowSVector, SMatrix};

use crate::eigen::check_bright;
use crate::steady::{bright_analytics, signal_gain, Quadrature, SteadyState, BRIGHT_TOL};
use crate::{Complex64, Error, OperatingPoint, Result, SystemParams};

/// Stability requires every drift eigenvalue to satisfy `Re < -STABILITY_MARGIN`.
pub const STABILITY_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix {
    pub r: Matrix4<f64>,
    /// `Delta_a + 4 K |<a>|^2`.
    pub delta_a_eff: f64,
    /// `Delta_b`; mode b has no Kerr shift.
    pub delta_b_eff: f64,
    /// Real part of `K <a>^2 e^{-2 i theta}`.
    pub kerr_x: f64,
    /// Imaginary part of `K <a>^2 e^{-2 i theta}`.
    pub kerr_y: f64,
    pub theta: f64,
}

pub fn drift_matrix(p: &SystemParams, state: &SteadyState, theta: f64) -> DriftMatrix {
    let k = p.kerr;
    let kt = k * state.a_mean * state.a_mean * Complex64::from_polar(1.0, -2.0 * theta);
    let (kx, ky) = (kt.re, kt.im);
    let da = p.delta_a() + 4.0 * k * state.intensity;
    let db = p.delta_b();
    let (kn, kb, j) = (p.kappa_n(), p.kappa_b, p.coupling);
    #[rustfmt::skip]
    let r = Matrix4::new(
        kn + 2.0 * ky,  da - 2.0 * kx,  0.0,  j,
        -da - 2.0 * kx, kn - 2.0 * ky,  -j,   0.0,
        0.0,            j,              -kb,  db,
        -j,             0.0,            -db,  -kb,
    );
    DriftMatrix {
        r,
        delta_a_eff: da,
        delta_b_eff: db,
        kerr_x: kx,
        kerr_y: ky,
        theta,
    }
}

pub fn max_growth_rate(r: &DriftMatrix) -> f64 {
    r.r.complex_eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn stability(r: &DriftMatrix) -> bool {
    max_growth_rate(r) < -STABILITY_MARGIN
}

/// Symmetrized noise-source correlators, `<sigma_i sigma_j>_sym = D_ij delta(t - t')`,
/// for vacuum inputs on all three channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix {
    pub d: Matrix4<f64>,
}

/// The map from the six input quadratures
/// `(X_a,in, Y_a,in, X_g,in, Y_g,in, X_b,in, Y_b,in)` to `sigma`.
pub fn noise_input_map(p: &SystemParams, theta: f64) -> SMatrix<f64, 4, 6> {
    let sa = (2.0 * p.kappa_a).sqrt();
    let sg = (2.0 * p.kappa_g).sqrt();
    let sb = (2.0 * p.kappa_b).sqrt();
    let (s2, c2) = (2.0 * theta).sin_cos();
    #[rustfmt::skip]
    let m = SMatrix::<f64, 4, 6>::from_row_slice(&[
        sa,  0.0, sg * c2,  -sg * s2, 0.0, 0.0,
        0.0, sa,  -sg * s2, -sg * c2, 0.0, 0.0,
        0.0, 0.0, 0.0,      0.0,      sb,  0.0,
        0.0, 0.0, 0.0,      0.0,      0.0, sb,
    ]);
    m
}

/// Each vacuum input quadrature has symmetrized variance 1/2.
const VACUUM_VARIANCE: f64 = 0.5;

pub fn diffusion_matrix(p: &SystemParams, theta: f64) -> DiffusionMatrix {
    let b = noise_input_map(p, theta);
    let mut d = b * b.transpose() * VACUUM_VARIANCE;
    // the 2 theta rotation of the gain noise is orthogonal, so D is diagonal
    // up to rounding; store it exactly symmetric
    d = (d + d.transpose()) * 0.5;
    DiffusionMatrix { d }
}

/// `T(omega) = -(R + i omega)^{-1}`.
pub fn susceptibility(r: &DriftMatrix, omega: f64) -> Result<Matrix4<Complex64>> {
    let m: Matrix4<Complex64> =
        r.r.map(|x| Complex64::new(x, 0.0)) + Matrix4::identity() * Complex64::new(0.0, omega);
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let det = m.determinant();
    if !(det.norm() > 1e-14 * scale.powi(4)) {
        return Err(Error::SingularAtFrequency { omega });
    }
    m.try_inverse()
        .map(|inv| -inv)
        .ok_or(Error::SingularAtFrequency { omega })
}

/// Noise gain of the output quadrature at `theta` and probe frequency `omega`.
pub fn noise_gain(p: &SystemParams, state: &SteadyState, theta: f64, omega: f64) -> Result<f64> {
    let r = drift_matrix(p, state, theta);
    let t = susceptibility(&r, omega)?;
    let (ka, kg, kb) = (p.kappa_a, p.kappa_g, p.kappa_b);
    let n = |z: Complex64| z.norm_sqr();
    Ok(n(Complex64::new(1.0, 0.0) - 2.0 * ka * t[(0, 0)])
        + 4.0 * ka * ka * n(t[(0, 1)])
        + 4.0 * ka * kg * (n(t[(0, 0)]) + n(t[(0, 1)]))
        + 4.0 * ka * kb * (n(t[(0, 2)]) + n(t[(0, 3)])))
}

/// Symmetrized output spectrum of the `theta` quadrature, assembled from
/// the explicit input-quadrature map rather than the closed noise-gain sum.
pub fn output_spectrum(p: &SystemParams, r: &DriftMatrix, omega: f64) -> Result<f64> {
    let t = susceptibility(r, omega)?;
    let b = noise_input_map(p, r.theta).map(|x| Complex64::new(x, 0.0));
    let row = t.row(0) * b * Complex64::new(-(2.0 * p.kappa_a).sqrt(), 0.0);
    let mut direct = RowSVector::<Complex64, 6>::zeros();
    direct[0] = Complex64::new(1.0, 0.0);
    let coeffs = direct + row;
    Ok(VACUUM_VARIANCE * coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

pub fn noise_figure(g_n: f64, g_s: f64) -> Result<f64> {
    if g_s <= 0.0 {
        return Err(Error::ZeroSignalGain);
    }
    Ok(g_n / g_s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseResult {
    pub g_s: f64,
    pub g_n: f64,
    /// Output spectrum at the probe frequency, `G_n / 2`.
    pub s_out: f64,
    pub f: f64,
    pub stable: bool,
    pub theta: f64,
}

/// Signal gain, noise gain and noise figure of one steady state.
pub fn analyze(
    point: &OperatingPoint,
    state: &SteadyState,
    quadrature: Quadrature,
    omega: f64,
) -> Result<NoiseResult> {
    let theta = quadrature.angle(state, &point.drive);
    let g_s = signal_gain(point, state, quadrature)?;
    let g_n = noise_gain(&point.system, state, theta, omega)?;
    let r = drift_matrix(&point.system, state, theta);
    let s_out = output_spectrum(&point.system, &r, omega)?;
    Ok(NoiseResult {
        g_s,
        g_n,
        s_out,
        f: noise_figure(g_n, g_s)?,
        stable: state.stable,
        theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightNoise {
    pub g_n: f64,
    pub f: f64,
    /// `2 (kappa_a + kappa_n) / (9 kappa_n)`, the large-gain limit of `f`.
    pub f_high_gain: f64,
}

pub fn high_gain_noise_figure(kappa_a: f64, kappa_n: f64) -> f64 {
    2.0 * (kappa_a + kappa_n) / (9.0 * kappa_n)
}

pub fn bright_noise_analytics(point: &OperatingPoint) -> Result<BrightNoise> {
    let p = &point.system;
    check_bright(p, BRIGHT_TOL)?;
    let g_s = bright_analytics(point)?.signal_gain;
    let f_high_gain = high_gain_noise_figure(p.kappa_a, p.kappa_n());
    Ok(BrightNoise {
        g_n: 1.0 + g_s * f_high_gain,
        f: 1.0 / g_s + f_high_gain,
        f_high_gain,
    })
}
