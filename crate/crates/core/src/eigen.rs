//! Linear (Kerr-free) eigenanalysis of the two-mode matrix `H` and the
//! bright-eigenmode operating point.

use crate::util::c;
use crate::{Complex64, Error, Result, SystemParams};

/// Splittings `|w+ - w-|` below this are treated as an exceptional point.
pub const DEGENERACY_TOL: f64 = 1e-10;

const BRIGHT_SCAN_POINTS: usize = 1024;

/// Complex detunings and the real coefficients of the characteristic
/// polynomial `w^2 - Delta~ w - (C1 + i C2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCoefficients {
    /// `Delta~ = Delta_a + Delta_b - i(kappa_a + kappa_b - kappa_g)`, the trace of `H`.
    pub delta_sum: Complex64,
    /// `delta~ = Delta_a - Delta_b + i(kappa_g - kappa_a + kappa_b)`, `H11 - H22`.
    pub delta_diff: Complex64,
    pub c1: f64,
    pub c2: f64,
}

impl EigenCoefficients {
    pub fn c(&self) -> Complex64 {
        c(self.c1, self.c2)
    }
}

pub fn eigen_coefficients(p: &SystemParams) -> EigenCoefficients {
    let (da, db, kn, kb) = (p.delta_a(), p.delta_b(), p.kappa_n(), p.kappa_b);
    EigenCoefficients {
        delta_sum: c(da + db, -(p.kappa_a + kb - p.kappa_g)),
        delta_diff: c(da - db, kn + kb),
        c1: p.coupling * p.coupling - da * db - kn * kb,
        c2: da * kb - db * kn,
    }
}

/// The two complex eigenfrequencies of `H`.
///
/// `plus` is always the more strongly damped branch (`Im(plus) <= Im(minus)`),
/// so at a bright point `minus` is the undamped eigenmode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfrequencies {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl Eigenfrequencies {
    pub fn splitting(&self) -> Complex64 {
        self.plus - self.minus
    }

    pub fn is_exceptional(&self) -> bool {
        self.splitting().norm() < DEGENERACY_TOL
    }
}

pub fn eigenfrequencies(p: &SystemParams) -> Eigenfrequencies {
    let co = eigen_coefficients(p);
    let mut root = (co.delta_sum * co.delta_sum + 4.0 * co.c()).sqrt();
    // principal root, negated when that would make `plus` the less damped branch
    if root.im > 0.0 {
        root = -root;
    }
    Eigenfrequencies {
        plus: 0.5 * (co.delta_sum + root),
        minus: 0.5 * (co.delta_sum - root),
    }
}

/// Eigenmode coefficients: `P+ = m+ a + m- b`, `P- = m- a - m+ b`.
pub fn eigenmodes(p: &SystemParams) -> Result<(Complex64, Complex64)> {
    let w = eigenfrequencies(p);
    if w.is_exceptional() {
        return Err(Error::DegenerateEigenmodes {
            splitting: w.splitting().norm(),
        });
    }
    let s = w.splitting();
    let d = eigen_coefficients(p).delta_diff;
    let m_plus = ((s + d) / (2.0 * s)).sqrt();
    let mut m_minus = ((s - d) / (2.0 * s)).sqrt();
    // the eigenvector equation fixes the relative sign: m+ m- = J / (w+ - w-)
    let target = p.coupling / s;
    if (m_plus * m_minus - target).norm() > (m_plus * m_minus + target).norm() {
        m_minus = -m_minus;
    }
    Ok((m_plus, m_minus))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    pub coefficients: EigenCoefficients,
    pub frequencies: Eigenfrequencies,
    pub m_plus: Complex64,
    pub m_minus: Complex64,
}

impl EigenSolution {
    pub fn new(p: &SystemParams) -> Result<Self> {
        let (m_plus, m_minus) = eigenmodes(p)?;
        Ok(Self {
            coefficients: eigen_coefficients(p),
            frequencies: eigenfrequencies(p),
            m_plus,
            m_minus,
        })
    }

    /// Amplitude of the bright-candidate mode `P- = m- a - m+ b`.
    pub fn project_minus(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.m_minus * a - self.m_plus * b
    }

    pub fn project_plus(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.m_plus * a + self.m_minus * b
    }
}

/// Gain rate and drive frequency at which `P-` has no decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightPoint {
    pub kappa_g_star: f64,
    pub omega_d_star: f64,
    /// `kappa_g_star - kappa_a`.
    pub kappa_n: f64,
}

impl BrightPoint {
    /// `params` with `kappa_g` and `omega_d` moved to the bright point.
    pub fn apply(&self, params: &SystemParams) -> SystemParams {
        params
            .with_kappa_g(self.kappa_g_star)
            .with_omega_d(self.omega_d_star)
    }
}

/// Drive frequency that resonantly addresses the bright mode for a given gain.
pub fn bright_drive_frequency(p: &SystemParams, kappa_g: f64) -> f64 {
    let kn = kappa_g - p.kappa_a;
    (p.omega_b * kn - p.omega_a * p.kappa_b) / (kn - p.kappa_b)
}

/// Residual of the bright-gain condition as a function of the net gain `kn`,
/// with its derivative.
fn bright_residual(p: &SystemParams, kn: f64) -> (f64, f64) {
    let dw = p.omega_b - p.omega_a;
    let a = dw * dw;
    let kb = p.kappa_b;
    let w = kn - kb;
    let f = (a / (w * w) + 1.0) * kn * kb - p.coupling * p.coupling;
    let df = kb * (a / (w * w) + 1.0) - 2.0 * kb * kn * a / (w * w * w);
    (f, df)
}

fn polish_root(p: &SystemParams, mut lo: f64, mut hi: f64) -> f64 {
    let (mut f_lo, _) = bright_residual(p, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-6 * hi.abs().max(1e-300) {
            break;
        }
        let (f_mid, _) = bright_residual(p, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let (f, df) = bright_residual(p, x);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        let next = (x - step).clamp(lo, hi);
        let done = (next - x).abs() <= 1e-15 * next.abs();
        x = next;
        if done {
            break;
        }
    }
    x
}

/// All net-gain roots of the bright-gain condition in `(0, kappa_b)`, ascending.
pub fn bright_gain_roots(p: &SystemParams) -> Vec<f64> {
    let kb = p.kappa_b;
    let n = BRIGHT_SCAN_POINTS;
    let grid: Vec<(f64, f64)> = (1..=n)
        .map(|i| {
            let kn = kb * i as f64 / (n + 1) as f64;
            (kn, bright_residual(p, kn).0)
        })
        .collect();
    let mut roots = Vec::new();
    for (i, &(x, fx)) in grid.iter().enumerate() {
        if fx == 0.0 {
            roots.push(x);
            continue;
        }
        if let Some(&(xn, fxn)) = grid.get(i + 1) {
            if fxn != 0.0 && (fx < 0.0) != (fxn < 0.0) {
                roots.push(polish_root(p, x, xn));
            }
        }
    }
    // an odd sign change between the last sample and the open upper end
    let (x_last, f_last) = grid[n - 1];
    let (f_top, _) = bright_residual(p, kb * (1.0 - 1e-12));
    if f_last != 0.0 && f_top.is_finite() && (f_last < 0.0) != (f_top < 0.0) {
        roots.push(polish_root(p, x_last, kb * (1.0 - 1e-12)));
    }
    let (f_bottom, _) = bright_residual(p, kb * 1e-12);
    let (x_first, f_first) = grid[0];
    if f_first != 0.0 && (f_bottom < 0.0) != (f_first < 0.0) {
        roots.insert(0, polish_root(p, kb * 1e-12, x_first));
    }
    roots
}

/// Solves for the gain rate that zeroes both `C1` and `C2`, and the matching
/// drive frequency. `kappa_g` and `omega_d` of the input are ignored.
pub fn solve_bright_gain(p: &SystemParams) -> Result<BrightPoint> {
    p.validate()?;
    let roots = bright_gain_roots(p);
    match roots.as_slice() {
        [] => Err(Error::NoBrightPoint),
        [kn] => {
            let kappa_g_star = p.kappa_a + kn;
            Ok(BrightPoint {
                kappa_g_star,
                omega_d_star: bright_drive_frequency(p, kappa_g_star),
                kappa_n: *kn,
            })
        }
        _ => Err(Error::AmbiguousRoot {
            roots: roots.iter().map(|kn| p.kappa_a + kn).collect(),
        }),
    }
}

/// Checks that `C1` and `C2` vanish to `tol`.
pub fn check_bright(p: &SystemParams, tol: f64) -> Result<()> {
    let co = eigen_coefficients(p);
    if co.c1.abs() > tol || co.c2.abs() > tol {
        Err(Error::NotBrightPoint {
            c1: co.c1,
            c2: co.c2,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig2() -> SystemParams {
        SystemParams {
            omega_b: 0.2,
            omega_d: -0.3,
            kappa_a: 0.25,
            kappa_g: 0.85,
            coupling: 3f64.sqrt() / 2.0,
            ..Default::default()
        }
    }

    fn mat_vec(h: &[[Complex64; 2]; 2], v: [Complex64; 2]) -> [Complex64; 2] {
        [
            h[0][0] * v[0] + h[0][1] * v[1],
            h[1][0] * v[0] + h[1][1] * v[1],
        ]
    }

    #[test]
    fn coefficients_vanish_at_fig2_bright_point() {
        let co = eigen_coefficients(&fig2());
        assert!(co.c1.abs() < 1e-14, "{}", co.c1);
        assert!(co.c2.abs() < 1e-14, "{}", co.c2);
    }

    #[test]
    fn decoupled_gain_compensated() {
        let p = SystemParams {
            kappa_a: 0.3,
            kappa_g: 0.3,
            ..Default::default()
        };
        let co = eigen_coefficients(&p);
        assert_eq!((co.c1, co.c2), (0.0, 0.0));
        assert!((co.delta_sum - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn passive_resonant_c1() {
        let p = SystemParams {
            kappa_a: 0.4,
            coupling: 0.7,
            ..Default::default()
        };
        let co = eigen_coefficients(&p);
        assert!((co.c1 - (0.49 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn decoupled_frequencies() {
        let p = SystemParams {
            omega_a: 0.3,
            omega_b: -0.2,
            kappa_a: 0.6,
            ..Default::default()
        };
        let w = eigenfrequencies(&p);
        let mut got = [w.plus, w.minus];
        got.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((got[0] - c(-0.2, -1.0)).norm() < 1e-14);
        assert!((got[1] - c(0.3, -0.6)).norm() < 1e-14);
    }

    #[test]
    fn fig2_bright_frequencies() {
        let w = eigenfrequencies(&fig2());
        assert!(w.minus.im.abs() < 1e-10);
        assert!(w.plus.im < 0.0);
        assert!((w.plus.im + (0.25 + 1.0 - 0.85)).abs() < 1e-12);
    }

    #[test]
    fn exceptional_points_reported() {
        // passive EP: delta~ = 2iJ with no detuning
        let p = SystemParams {
            coupling: 0.5,
            ..Default::default()
        };
        let w = eigenfrequencies(&p);
        assert!(w.is_exceptional());
        assert!((w.plus - eigen_coefficients(&p).delta_sum / 2.0).norm() < 1e-12);
        assert!(matches!(
            eigenmodes(&p),
            Err(Error::DegenerateEigenmodes { .. })
        ));
        // decoupled with equal complex frequencies
        let p = SystemParams {
            kappa_a: 1.25,
            kappa_g: 0.25,
            ..Default::default()
        };
        assert!(matches!(
            eigenmodes(&p),
            Err(Error::DegenerateEigenmodes { .. })
        ));
    }

    #[test]
    fn fig2_bright_mode_is_eigenvector() {
        let p = fig2();
        let sol = EigenSolution::new(&p).unwrap();
        let h = p.hamiltonian();
        let v = [sol.m_minus, -sol.m_plus];
        let hv = mat_vec(&h, v);
        for k in 0..2 {
            assert!((hv[k] - sol.frequencies.minus * v[k]).norm() < 1e-10);
        }
        let v = [sol.m_plus, sol.m_minus];
        let hv = mat_vec(&h, v);
        for k in 0..2 {
            assert!((hv[k] - sol.frequencies.plus * v[k]).norm() < 1e-10);
        }
    }

    #[test]
    fn fig2_bright_gain() {
        let p = SystemParams {
            omega_b: 0.2,
            kappa_a: 0.25,
            coupling: 3f64.sqrt() / 2.0,
            ..Default::default()
        };
        let bp = solve_bright_gain(&p).unwrap();
        assert!((bp.kappa_g_star - 0.85).abs() < 1e-12 * 0.85);
        assert!((bp.omega_d_star + 0.3).abs() < 1e-12 * 0.3);
        let at = bp.apply(&p);
        check_bright(&at, 1e-10).unwrap();
        let w = eigenfrequencies(&at);
        assert!(w.minus.im.abs() < 1e-10);
    }

    #[test]
    fn zero_detuning_bright_gain() {
        let p = SystemParams {
            omega_a: 0.4,
            omega_b: 0.4,
            coupling: 0.5,
            ..Default::default()
        };
        let bp = solve_bright_gain(&p).unwrap();
        assert!((bp.kappa_g_star - 0.25).abs() < 1e-12);
        assert!((bp.omega_d_star - 0.4).abs() < 1e-12);
        let w = eigenfrequencies(&bp.apply(&p));
        assert!(w.minus.norm() < 1e-10);
        assert!(w.plus.im < 0.0);
    }

    #[test]
    fn no_bright_point_without_coupling() {
        let p = SystemParams {
            omega_b: 0.2,
            kappa_a: 0.25,
            ..Default::default()
        };
        assert_eq!(solve_bright_gain(&p), Err(Error::NoBrightPoint));
        // J^2 >= kappa_b^2 with no detuning: residual stays negative
        let p = SystemParams {
            coupling: 1.5,
            ..Default::default()
        };
        assert_eq!(solve_bright_gain(&p), Err(Error::NoBrightPoint));
    }

    fn params_strategy() -> impl Strategy<Value = SystemParams> {
        (
            -2.0..2.0f64,
            -2.0..2.0f64,
            -2.0..2.0f64,
            0.0..2.0f64,
            0.1..3.0f64,
            0.0..2.0f64,
            0.0..2.0f64,
        )
            .prop_map(|(wa, wb, wd, ka, kb, kg, j)| SystemParams {
                omega_a: wa,
                omega_b: wb,
                omega_d: wd,
                kappa_a: ka,
                kappa_b: kb,
                kappa_g: kg,
                coupling: j,
                kerr: 0.0,
            })
    }

    fn rel(x: Complex64, scale: f64) -> f64 {
        x.norm() / scale.max(1.0)
    }

    proptest! {
        #[test]
        fn vieta_identities(p in params_strategy()) {
            let co = eigen_coefficients(&p);
            let w = eigenfrequencies(&p);
            let scale = co.delta_sum.norm() + co.c().norm();
            prop_assert!(rel(w.plus + w.minus - co.delta_sum, scale) < 1e-12);
            prop_assert!(rel(w.plus * w.minus + co.c(), scale * scale) < 1e-12);
        }

        #[test]
        fn matches_general_eigensolver(p in params_strategy()) {
            let h = p.hamiltonian();
            let m = nalgebra::Matrix2::new(h[0][0], h[0][1], h[1][0], h[1][1]);
            let ev = nalgebra::Schur::new(m).eigenvalues().unwrap();
            let w = eigenfrequencies(&p);
            let scale = w.plus.norm().max(w.minus.norm()).max(1.0);
            let direct = (ev[0] - w.plus).norm().max((ev[1] - w.minus).norm());
            let swapped = (ev[0] - w.minus).norm().max((ev[1] - w.plus).norm());
            // coalescing eigenvalues are only determined to sqrt(eps)
            let tol = if w.splitting().norm() < 1e-4 { 1e-7 } else { 1e-10 };
            prop_assert!(direct.min(swapped) / scale < tol);
            prop_assert!(w.plus.im <= w.minus.im);
        }

        #[test]
        fn eigenmode_normalization(p in params_strategy()) {
            if let Ok((mp, mm)) = eigenmodes(&p) {
                let w = eigenfrequencies(&p);
                prop_assume!(w.splitting().norm() > 1e-6);
                prop_assert!((mp * mp + mm * mm - 1.0).norm() < 1e-12);
                let sol = EigenSolution::new(&p).unwrap();
                let h = p.hamiltonian();
                let v = [sol.m_minus, -sol.m_plus];
                let hv = mat_vec(&h, v);
                let scale = h[0][0].norm() + h[1][1].norm() + p.coupling + 1.0;
                for k in 0..2 {
                    prop_assert!((hv[k] - w.minus * v[k]).norm() / scale < 1e-9);
                }
            }
        }

        #[test]
        fn bright_solutions_satisfy_invariants(
            dw in -1.0..1.0f64, ka in 0.0..1.0f64, j in 0.05..1.5f64
        ) {
            let p = SystemParams { omega_b: dw, kappa_a: ka, coupling: j, ..Default::default() };
            if let Ok(bp) = solve_bright_gain(&p) {
                prop_assert!(bp.kappa_g_star > ka && bp.kappa_g_star < ka + 1.0);
                let at = bp.apply(&p);
                let co = eigen_coefficients(&at);
                prop_assert!(co.c1.abs() < 1e-10 && co.c2.abs() < 1e-10);
                let w = eigenfrequencies(&at);
                prop_assert!(w.minus.im.abs() < 1e-10);
                prop_assert!((w.plus.im + (ka + 1.0 - bp.kappa_g_star)).abs() < 1e-10);
            }
        }
    }
}
