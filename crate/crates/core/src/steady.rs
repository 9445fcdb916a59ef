//! Mean-field steady state: the cubic intensity equation, the mean fields,
//! the output amplitude and the signal gain.

use std::f64::consts::PI;

use crate::eigen::{check_bright, eigen_coefficients};
use crate::fluctuations::{drift_matrix, max_growth_rate};
use crate::util::c;
use crate::{Complex64, DriveParams, Error, OperatingPoint, Result, SystemParams};

/// `|C1|, |C2|` below this count as a bright point for the closed forms.
pub const BRIGHT_TOL: f64 = 1e-8;

/// `c3 x^3 + c2 x^2 + c1 x - N_in = 0` in the intracavity intensity
/// `x = |<a>|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicProblem {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub n_in: f64,
}

pub fn cubic_coefficients(p: &SystemParams, drive: &DriveParams) -> Result<CubicProblem> {
    if p.coupling == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let co = eigen_coefficients(p);
    let (kb, db, k) = (p.kappa_b, p.delta_b(), p.kerr);
    let norm = kb * kb * p.coupling * p.coupling;
    Ok(CubicProblem {
        c1: (co.c1 * co.c1 + co.c2 * co.c2) / (4.0 * norm),
        c2: -k * (co.c1 * db - co.c2 * kb) / norm,
        c3: k * k * (kb * kb + db * db) / norm,
        n_in: drive.n_in,
    })
}

impl CubicProblem {
    pub fn residual(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x - self.n_in
    }

    fn derivative(&self, x: f64) -> f64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    fn polish(&self, mut x: f64) -> f64 {
        for _ in 0..60 {
            let d = self.derivative(x);
            if d == 0.0 || !d.is_finite() {
                break;
            }
            let step = self.residual(x) / d;
            x -= step;
            if step.abs() <= 1e-16 * x.abs() {
                break;
            }
        }
        x
    }

    /// All real roots `x >= 0`, ascending. Empty when no finite steady state
    /// exists (linear system driven exactly on an undamped resonance).
    pub fn roots(&self) -> Vec<f64> {
        if self.n_in == 0.0 {
            // x (c3 x^2 + c2 x + c1) = 0 and the quadratic factor has no
            // positive root (c2^2 <= 4 c1 c3 identically)
            return vec![0.0];
        }
        let candidates = if self.c3 == 0.0 {
            if self.c2 != 0.0 {
                let disc = self.c1 * self.c1 + 4.0 * self.c2 * self.n_in;
                if disc < 0.0 {
                    vec![]
                } else {
                    let s = disc.sqrt();
                    vec![(-self.c1 + s) / (2.0 * self.c2), (-self.c1 - s) / (2.0 * self.c2)]
                }
            } else if self.c1 > 0.0 {
                vec![self.n_in / self.c1]
            } else {
                vec![]
            }
        } else {
            cardano(self.c2 / self.c3, self.c1 / self.c3, -self.n_in / self.c3)
        };
        let mut roots: Vec<f64> = candidates
            .into_iter()
            .filter(|x| x.is_finite())
            .map(|x| self.polish(x))
            .filter(|&x| x >= 0.0)
            .collect();
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * b.abs().max(1.0));
        roots
    }
}

/// Real roots of the monic cubic `t^3 + a t^2 + b t + c`.
fn cardano(a: f64, b: f64, c: f64) -> Vec<f64> {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v - shift]
    } else if p == 0.0 {
        vec![(-q).cbrt() - shift]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| r * (phi - 2.0 * PI * k as f64 / 3.0).cos() - shift)
            .collect()
    }
}

/// Which output quadrature a gain or noise figure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Quadrature {
    /// `theta = theta_s + theta_0` of the state being evaluated, i.e. the
    /// quadrature aligned with its own output.
    #[default]
    Output,
    /// A fixed angle in radians, e.g. the one set at the bright point and
    /// held while the drive is detuned.
    Fixed(f64),
}

impl Quadrature {
    pub fn angle(&self, state: &SteadyState, drive: &DriveParams) -> f64 {
        match *self {
            Quadrature::Output => state.theta_s + drive.theta_0,
            Quadrature::Fixed(theta) => theta,
        }
    }

    pub fn rotated(&self, state: &SteadyState, drive: &DriveParams, by: f64) -> Quadrature {
        Quadrature::Fixed(self.angle(state, drive) + by)
    }
}

/// One mean-field fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    /// `|<a>|^2`, the intracavity excitation number.
    pub intensity: f64,
    pub a_mean: Complex64,
    pub b_mean: Complex64,
    /// `<a_out> = -sqrt(2 kappa_a) <a>`.
    pub a_out_mean: Complex64,
    /// Output phase relative to the input reference phase, in `(-pi, pi]`.
    pub theta_s: f64,
    pub stable: bool,
    /// Largest real part among the fluctuation drift eigenvalues.
    pub max_growth: f64,
}

/// Mean fields at a frozen intensity, from the 2x2 linear system obtained by
/// setting the time derivatives to zero.
pub fn mean_fields(
    p: &SystemParams,
    drive: &DriveParams,
    intensity: f64,
) -> Result<(Complex64, Complex64)> {
    if drive.n_in == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let h = p.hamiltonian();
    let h11 = h[0][0] + 2.0 * p.kerr * intensity;
    let (h12, h22) = (h[0][1], h[1][1]);
    // (H + 2K x M) v = -i f with f = (0, sqrt(2 kappa_b) eps_in)
    let det = h11 * h22 - h12 * h12;
    let scale = h11.norm() * h22.norm() + h12.norm_sqr();
    if det.norm() <= 1e-14 * scale.max(1e-300) {
        return Err(Error::SingularSystem);
    }
    let rhs = -c(0.0, 1.0) * (2.0 * p.kappa_b).sqrt() * drive.epsilon_in(p.kappa_b);
    let a = -h12 * rhs / det;
    let b = h11 * rhs / det;
    Ok((a, b))
}

pub fn output_amplitude(p: &SystemParams, a_mean: Complex64) -> Complex64 {
    -(2.0 * p.kappa_a).sqrt() * a_mean
}

fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Builds the steady state at one intensity root and classifies its stability.
pub fn steady_state_at(point: &OperatingPoint, intensity: f64) -> Result<SteadyState> {
    let (p, drive) = (&point.system, &point.drive);
    let (a_mean, b_mean) = mean_fields(p, drive, intensity)?;
    let a_out_mean = output_amplitude(p, a_mean);
    let theta_s = if a_out_mean.norm() > 0.0 {
        wrap_phase(a_out_mean.arg() - drive.theta_0)
    } else {
        0.0
    };
    let mut state = SteadyState {
        intensity,
        a_mean,
        b_mean,
        a_out_mean,
        theta_s,
        stable: false,
        max_growth: f64::NAN,
    };
    // eigenvalues of R do not depend on the quadrature angle
    let r = drift_matrix(p, &state, state.theta_s + drive.theta_0);
    state.max_growth = max_growth_rate(&r);
    state.stable = crate::fluctuations::stability(&r);
    Ok(state)
}

/// Every nonnegative steady state, ascending in intensity, each tagged stable
/// or unstable.
pub fn solve_steady_states(point: &OperatingPoint) -> Result<Vec<SteadyState>> {
    point.validate()?;
    let problem = cubic_coefficients(&point.system, &point.drive)?;
    problem
        .roots()
        .into_iter()
        .map(|x| steady_state_at(point, x))
        .collect()
}

/// Lowest-intensity stable steady state, if any.
pub fn lowest_stable(point: &OperatingPoint) -> Result<Option<SteadyState>> {
    Ok(solve_steady_states(point)?.into_iter().find(|s| s.stable))
}

/// `G_s = <X_out>^2 / (2 |eps_in|^2)` for the quadrature at `theta`.
pub fn signal_gain(point: &OperatingPoint, state: &SteadyState, quadrature: Quadrature) -> Result<f64> {
    let drive = &point.drive;
    if drive.n_in == 0.0 {
        return Err(Error::ZeroInput);
    }
    let theta = quadrature.angle(state, drive);
    let x_out = 2f64.sqrt() * (state.a_out_mean * Complex64::from_polar(1.0, -theta)).re;
    let i_in = 2.0 * drive.epsilon_in(point.system.kappa_b).norm_sqr();
    Ok(x_out * x_out / i_in)
}

/// Closed-form bright-point results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightAnalytics {
    pub intensity: f64,
    pub a_out: Complex64,
    pub signal_gain: f64,
}

pub fn bright_analytics(point: &OperatingPoint) -> Result<BrightAnalytics> {
    let (p, drive) = (&point.system, &point.drive);
    check_bright(p, BRIGHT_TOL)?;
    if p.kerr == 0.0 {
        return Err(Error::ZeroKerr);
    }
    if drive.n_in == 0.0 {
        return Err(Error::ZeroInput);
    }
    let (kb, kn, k2, n) = (p.kappa_b, p.kappa_n(), p.kerr * p.kerr, drive.n_in);
    let intensity = (n * kn * kb / k2).cbrt();
    let gain = p.kappa_a * (kn / (n * n * kb * kb * k2)).cbrt();
    let theta_s = c(1.0, -p.delta_b() / kb).arg();
    let a_out = gain.sqrt() * drive.epsilon_in(kb) * Complex64::from_polar(1.0, theta_s);
    Ok(BrightAnalytics {
        intensity,
        a_out,
        signal_gain: gain,
    })
}
