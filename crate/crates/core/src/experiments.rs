//! Parameter sweeps, operational bandwidth and gain-bandwidth product.

use rayon::prelude::*;

use crate::eigen::solve_bright_gain;
use crate::fluctuations::{analyze, bright_noise_analytics};
use crate::steady::{bright_analytics, solve_steady_states, Quadrature, SteadyState};
use crate::util::c;
use crate::{to_db, DriveParams, Error, OperatingPoint, Result, SystemParams};

/// Reference parameter sets.
pub mod presets {
    use super::*;

    /// `(N_in, K)` for the three reference curves.
    pub const CURVES: [(f64, f64); 3] = [(0.5, 1e-4), (0.5, 5e-5), (0.7, 5e-5)];

    /// `omega_b = omega_a + 0.2`, `kappa_a = 0.25`, `J = sqrt(3)/2`, with the
    /// bright-point gain `0.85` and drive `omega_a - 0.3`.
    pub fn reference_system(kerr: f64) -> SystemParams {
        SystemParams {
            omega_a: 0.0,
            omega_b: 0.2,
            omega_d: -0.3,
            kappa_a: 0.25,
            kappa_b: 1.0,
            kappa_g: 0.85,
            coupling: 3f64.sqrt() / 2.0,
            kerr,
        }
    }

    pub fn reference_point(n_in: f64, kerr: f64) -> OperatingPoint {
        OperatingPoint::new(reference_system(kerr), DriveParams::new(n_in))
    }
}

/// Quadrature angle `Arg(1 - i Delta_b / kappa_b) + theta_0` set at the
/// baseline operating point and held fixed across a sweep.
pub fn bright_quadrature(point: &OperatingPoint) -> Quadrature {
    let p = &point.system;
    Quadrature::Fixed(c(1.0, -p.delta_b() / p.kappa_b).arg() + point.drive.theta_0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    KappaG,
    /// `kappa_a` with `kappa_g` moved along so that `kappa_g - kappa_a` stays fixed.
    KappaAFixedNet,
    /// Drive offset `delta`: `omega_d = omega_d(baseline) + delta`.
    Detuning,
    NIn,
    Kerr,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::KappaG => "kappa_g",
            SweepAxis::KappaAFixedNet => "kappa_a",
            SweepAxis::Detuning => "delta",
            SweepAxis::NIn => "n_in",
            SweepAxis::Kerr => "kerr",
        }
    }

    pub fn apply(&self, base: &OperatingPoint, value: f64) -> OperatingPoint {
        let mut pt = *base;
        match self {
            SweepAxis::KappaG => pt.system.kappa_g = value,
            SweepAxis::KappaAFixedNet => {
                pt.system.kappa_g = value + base.system.kappa_n();
                pt.system.kappa_a = value;
            }
            SweepAxis::Detuning => pt.system.omega_d = base.system.omega_d + value,
            SweepAxis::NIn => pt.drive.n_in = value,
            SweepAxis::Kerr => pt.system.kerr = value,
        }
        pt
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    /// Strictly monotone grid.
    pub values: Vec<f64>,
    pub baseline: OperatingPoint,
    pub quadrature: Quadrature,
    /// Probe frequency for the noise gain.
    pub omega: f64,
    /// Continuation starts at the grid point nearest this value and proceeds
    /// outward; `None` starts at the first point.
    pub origin: Option<f64>,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, values: Vec<f64>, baseline: OperatingPoint) -> Self {
        Self {
            axis,
            values,
            baseline,
            quadrature: bright_quadrature(&baseline),
            omega: 0.0,
            origin: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.baseline.validate()?;
        let v = &self.values;
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::BadGrid);
        }
        let up = v.windows(2).all(|w| w[1] > w[0]);
        let down = v.windows(2).all(|w| w[1] < w[0]);
        if !(up || down) {
            return Err(Error::BadGrid);
        }
        Ok(())
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// Intensity of the selected branch; NaN when no steady state exists.
    pub intensity: f64,
    pub g_s: f64,
    pub g_n: f64,
    pub f: f64,
    pub stable: bool,
    /// Largest real part of the drift eigenvalues on the selected branch.
    pub max_growth: f64,
    pub n_roots: usize,
    pub n_stable: usize,
}

impl SweepRow {
    pub fn g_s_db(&self) -> f64 {
        to_db(self.g_s)
    }
    pub fn g_n_db(&self) -> f64 {
        to_db(self.g_n)
    }
    pub fn f_db(&self) -> f64 {
        to_db(self.f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// True when any grid point had more than one stable branch, i.e. the
    /// selected branch depends on sweep history.
    pub fn multistable(&self) -> bool {
        self.rows.iter().any(|r| r.n_stable > 1)
    }
}

/// Picks the stable branch nearest the previously selected intensity, the
/// lowest stable branch when there is no history, and falls back to an
/// unstable branch when nothing is stable.
fn select_branch(states: &[SteadyState], previous: Option<f64>) -> Option<SteadyState> {
    let nearest = |pool: &mut dyn Iterator<Item = &SteadyState>| -> Option<SteadyState> {
        match previous {
            Some(x0) => pool
                .min_by(|a, b| (a.intensity - x0).abs().total_cmp(&(b.intensity - x0).abs()))
                .copied(),
            None => pool.next().copied(),
        }
    };
    nearest(&mut states.iter().filter(|s| s.stable)).or_else(|| nearest(&mut states.iter()))
}

fn evaluate(spec: &SweepSpec, value: f64, previous: Option<f64>) -> Result<(SweepRow, Option<f64>)> {
    let pt = spec.axis.apply(&spec.baseline, value);
    let states = match solve_steady_states(&pt) {
        Ok(s) => s,
        Err(Error::SingularSystem) => vec![],
        Err(e) => return Err(e),
    };
    let mut row = SweepRow {
        value,
        intensity: f64::NAN,
        g_s: f64::NAN,
        g_n: f64::NAN,
        f: f64::NAN,
        stable: false,
        max_growth: f64::NAN,
        n_roots: states.len(),
        n_stable: states.iter().filter(|s| s.stable).count(),
    };
    let Some(state) = select_branch(&states, previous) else {
        return Ok((row, None));
    };
    row.intensity = state.intensity;
    row.stable = state.stable;
    row.max_growth = state.max_growth;
    if pt.drive.n_in > 0.0 {
        match analyze(&pt, &state, spec.quadrature, spec.omega) {
            Ok(n) => {
                row.g_s = n.g_s;
                row.g_n = n.g_n;
                row.f = n.f;
            }
            Err(Error::ZeroSignalGain) => {
                row.g_s = 0.0;
                row.f = f64::INFINITY;
            }
            Err(Error::SingularAtFrequency { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let carry = state.stable.then_some(state.intensity);
    Ok((row, carry))
}

fn run_line(spec: &SweepSpec, indices: impl Iterator<Item = usize>, rows: &mut [Option<SweepRow>], seed: Option<f64>) -> Result<()> {
    let mut previous = seed;
    for i in indices {
        let (row, carry) = evaluate(spec, spec.values[i], previous)?;
        previous = carry.or(previous);
        rows[i] = Some(row);
    }
    Ok(())
}

/// Evaluates every grid point, selecting branches by continuation along the
/// axis.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let n = spec.values.len();
    let start = match spec.origin {
        Some(x0) => (0..n)
            .min_by(|&a, &b| (spec.values[a] - x0).abs().total_cmp(&(spec.values[b] - x0).abs()))
            .unwrap(),
        None => 0,
    };
    let mut rows = vec![None; n];
    run_line(spec, start..n, &mut rows, None)?;
    let seed = rows[start].and_then(|r: SweepRow| r.stable.then_some(r.intensity));
    run_line(spec, (0..start).rev(), &mut rows, seed)?;
    Ok(SweepTable {
        axis: spec.axis,
        rows: rows.into_iter().map(|r| r.unwrap()).collect(),
    })
}

/// Signal gain versus `kappa_g`.
pub fn gain_sweep(baseline: OperatingPoint, kappa_g: Vec<f64>) -> Result<SweepTable> {
    run_sweep(&SweepSpec::new(SweepAxis::KappaG, kappa_g, baseline))
}

/// Noise figure versus `kappa_g`. Same table as [`gain_sweep`].
pub fn noise_sweep(baseline: OperatingPoint, kappa_g: Vec<f64>) -> Result<SweepTable> {
    gain_sweep(baseline, kappa_g)
}

/// Response to a detuned drive, continued outward from `delta = 0`.
pub fn detuning_sweep(baseline: OperatingPoint, delta: Vec<f64>) -> Result<SweepTable> {
    let mut spec = SweepSpec::new(SweepAxis::Detuning, delta, baseline);
    spec.origin = Some(0.0);
    run_sweep(&spec)
}

/// Largest relative difference between a sweep and the same sweep run in
/// the opposite direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HysteresisReport {
    pub max_relative_gap: f64,
    pub multistable_points: usize,
}

pub fn hysteresis_check(spec: &SweepSpec) -> Result<HysteresisReport> {
    let mut fwd = spec.clone();
    fwd.origin = None;
    let mut rev = fwd.clone();
    rev.values.reverse();
    let a = run_sweep(&fwd)?;
    let mut b = run_sweep(&rev)?;
    b.rows.reverse();
    let mut gap: f64 = 0.0;
    for (x, y) in a.rows.iter().zip(&b.rows) {
        if x.intensity.is_finite() && y.intensity.is_finite() {
            gap = gap.max((x.intensity - y.intensity).abs() / x.intensity.abs().max(1e-300));
        } else if x.intensity.is_finite() != y.intensity.is_finite() {
            gap = f64::INFINITY;
        }
    }
    Ok(HysteresisReport {
        max_relative_gap: gap,
        multistable_points: a.rows.iter().filter(|r| r.n_stable > 1).count(),
    })
}

/// Closed-form bright-point figures of merit at one `kappa_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaARow {
    pub kappa_a: f64,
    pub kappa_g: f64,
    pub g_s_bm: f64,
    pub g_n_bm: f64,
    pub f_bm: f64,
    pub f_high_gain: f64,
    /// Noise figure from the full numeric pipeline, for comparison.
    pub f_numeric: f64,
    pub max_growth: f64,
}

/// Sweeps `kappa_a` at fixed net gain. The bright condition depends only on
/// `kappa_g - kappa_a`, so `J` and `omega_d` stay put.
pub fn kappa_a_sweep(baseline: OperatingPoint, kappa_a: Vec<f64>) -> Result<Vec<KappaARow>> {
    let spec = SweepSpec::new(SweepAxis::KappaAFixedNet, kappa_a, baseline);
    spec.validate()?;
    spec.values
        .par_iter()
        .map(|&ka| {
            let pt = spec.axis.apply(&baseline, ka);
            let gs = bright_analytics(&pt)?.signal_gain;
            let noise = bright_noise_analytics(&pt)?;
            let row = evaluate(&spec, ka, None)?.0;
            Ok(KappaARow {
                kappa_a: ka,
                kappa_g: pt.system.kappa_g,
                g_s_bm: gs,
                g_n_bm: noise.g_n,
                f_bm: noise.f,
                f_high_gain: noise.f_high_gain,
                f_numeric: row.f,
                max_growth: row.max_growth,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthOptions {
    /// Scan `delta` over `[-span, span]`.
    pub span: f64,
    pub points: usize,
    pub omega: f64,
}

impl Default for BandwidthOptions {
    fn default() -> Self {
        Self {
            span: 2.0,
            points: 2001,
            omega: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandwidthResult {
    pub delta_omega: f64,
    pub g_s_peak: f64,
    pub peak_delta: f64,
    pub gbp: f64,
    pub interval: (f64, f64),
    /// Other satisfying intervals, not counted in `delta_omega`.
    pub islands: Vec<(f64, f64)>,
    /// Largest real part of the drift eigenvalues over the band's grid points.
    pub max_growth_in_band: f64,
}

/// Peak of a sampled curve refined by a parabola through the top three samples.
fn refine_peak(x: &[f64], y: &[f64], i: usize) -> (f64, f64) {
    if i == 0 || i + 1 >= y.len() || !y[i - 1].is_finite() || !y[i + 1].is_finite() {
        return (x[i], y[i]);
    }
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let denom = y0 - 2.0 * y1 + y2;
    if denom >= 0.0 {
        return (x[i], y[i]);
    }
    let h = x[i + 1] - x[i];
    let off = 0.5 * (y0 - y2) / denom;
    (x[i] + off * h, y1 - 0.25 * (y0 - y2) * off)
}

/// Operational bandwidth: the detuning interval around the gain peak where
/// the signal gain stays within 3 dB of the peak and the noise figure stays
/// below 0 dB. `baseline` is the operating point at `delta = 0`.
pub fn bandwidth(baseline: &OperatingPoint, options: &BandwidthOptions) -> Result<BandwidthResult> {
    let grid = linspace(-options.span, options.span, options.points);
    let mut spec = SweepSpec::new(SweepAxis::Detuning, grid, *baseline);
    spec.origin = Some(0.0);
    spec.omega = options.omega;
    let table = run_sweep(&spec)?;
    let delta: Vec<f64> = table.rows.iter().map(|r| r.value).collect();
    let gain_db: Vec<f64> = table
        .rows
        .iter()
        .map(|r| if r.stable { r.g_s_db() } else { f64::NAN })
        .collect();
    let peak_idx = (0..gain_db.len())
        .filter(|&i| gain_db[i].is_finite())
        .max_by(|&a, &b| gain_db[a].total_cmp(&gain_db[b]))
        .ok_or(Error::EmptyBand)?;
    let (peak_delta, peak_db) = refine_peak(&delta, &gain_db, peak_idx);
    let threshold = peak_db - 3.0;
    let margin: Vec<f64> = table
        .rows
        .iter()
        .zip(&gain_db)
        .map(|(r, g)| (g - threshold).min(-r.f_db()))
        .collect();
    let ok = |i: usize| margin[i] > 0.0;

    // maximal runs of satisfying grid points
    let mut runs = Vec::new();
    let mut i = 0;
    while i < margin.len() {
        if ok(i) {
            let s = i;
            while i + 1 < margin.len() && ok(i + 1) {
                i += 1;
            }
            runs.push((s, i));
        }
        i += 1;
    }
    if runs.is_empty() {
        return Err(Error::EmptyBand);
    }
    let edge = |inside: usize, outside: Option<usize>| -> f64 {
        match outside {
            Some(o) if margin[o].is_finite() => {
                let (m_in, m_out) = (margin[inside], margin[o]);
                delta[inside] + (delta[o] - delta[inside]) * m_in / (m_in - m_out)
            }
            _ => delta[inside],
        }
    };
    let interval_of = |(s, e): (usize, usize)| {
        (
            edge(s, s.checked_sub(1)),
            edge(e, (e + 1 < margin.len()).then_some(e + 1)),
        )
    };
    let main = runs
        .iter()
        .copied()
        .find(|&(s, e)| (s..=e).contains(&peak_idx))
        .unwrap_or_else(|| {
            // the peak itself fails F < 0 dB; take the run with the highest gain
            *runs
                .iter()
                .max_by(|a, b| {
                    let best = |&(s, e): &(usize, usize)| {
                        (s..=e).map(|k| gain_db[k]).fold(f64::NEG_INFINITY, f64::max)
                    };
                    best(a).total_cmp(&best(b))
                })
                .unwrap()
        });
    let interval = interval_of(main);
    let islands = runs
        .iter()
        .filter(|&&r| r != main)
        .map(|&r| interval_of(r))
        .collect();
    let delta_omega = interval.1 - interval.0;
    let g_s_peak = 10f64.powf(peak_db / 10.0);
    let max_growth_in_band = (main.0..=main.1)
        .map(|k| table.rows[k].max_growth)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BandwidthResult {
        delta_omega,
        g_s_peak,
        peak_delta,
        gbp: g_s_peak.sqrt() * delta_omega,
        interval,
        islands,
        max_growth_in_band,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GbpRow {
    pub n_in: f64,
    pub kerr: f64,
    pub band: BandwidthResult,
}

/// Bandwidth and GBP versus `N_in` at fixed Kerr coefficient.
pub fn gbp_sweep(
    baseline: &OperatingPoint,
    n_in: &[f64],
    options: &BandwidthOptions,
) -> Result<Vec<GbpRow>> {
    n_in.par_iter()
        .map(|&n| {
            let mut pt = *baseline;
            pt.drive.n_in = n;
            Ok(GbpRow {
                n_in: n,
                kerr: pt.system.kerr,
                band: bandwidth(&pt, options)?,
            })
        })
        .collect()
}

/// Moves `kappa_g` and `omega_d` of `point` onto its bright point.
pub fn to_bright_point(point: &OperatingPoint) -> Result<OperatingPoint> {
    let bp = solve_bright_gain(&point.system)?;
    Ok(OperatingPoint::new(bp.apply(&point.system), point.drive))
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::fluctuations::high_gain_noise_figure;

    #[test]
    fn grid_validation() {
        let base = reference_point(0.5, 1e-4);
        let bad = SweepSpec::new(SweepAxis::KappaG, vec![0.1, 0.3, 0.2], base);
        assert_eq!(run_sweep(&bad), Err(Error::BadGrid));
        let empty = SweepSpec::new(SweepAxis::KappaG, vec![], base);
        assert_eq!(run_sweep(&empty), Err(Error::BadGrid));
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-2.0, 2.0, 2001);
        assert_eq!(g.len(), 2001);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[2000], 2.0);
        assert_eq!(g[1000], 0.0);
    }

    #[test]
    fn gain_sweep_at_bright_point() {
        let rows = |n, k| gain_sweep(reference_point(n, k), vec![0.84, 0.85, 0.86]).unwrap().rows[1];
        let a = rows(0.5, 1e-4);
        assert!((a.g_s_db() - 21.913).abs() < 0.01);
        let b = rows(0.5, 5e-5);
        assert!((b.g_s_db() - a.g_s_db() - 2.007).abs() < 0.01);
        let c = rows(0.7, 5e-5);
        let expect = 20.0 / 3.0 * (0.7f64 / 0.5).log10();
        assert!((b.g_s_db() - c.g_s_db() - expect).abs() < 0.01);
    }

    #[test]
    fn noise_sweep_edges() {
        let base = reference_point(0.5, 1e-4);
        let t = noise_sweep(base, linspace(0.25, 1.25, 401)).unwrap();
        let first = t.rows[0];
        assert!(first.stable && first.f_db() >= 0.0);
        // beyond the stability boundary rows are flagged
        assert!(!t.rows.last().unwrap().stable);
        let at = t.rows.iter().find(|r| (r.value - 0.85).abs() < 1e-9).unwrap();
        assert!((at.f_db() + 4.93).abs() < 0.05);
    }

    #[test]
    fn kappa_a_rows() {
        let rows = kappa_a_sweep(reference_point(0.5, 1e-4), linspace(0.05, 0.5, 10)).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].f_bm > w[0].f_bm);
            assert!(w[1].g_s_bm > w[0].g_s_bm);
        }
        for r in &rows {
            assert!((r.kappa_g - r.kappa_a - 0.6).abs() < 1e-12);
            assert!((r.f_high_gain - high_gain_noise_figure(r.kappa_a, 0.6)).abs() < 1e-15);
            assert!((r.f_numeric - r.f_bm).abs() < 0.01 * r.f_bm);
        }
        let r = rows.iter().find(|r| (r.kappa_a - 0.25).abs() < 1e-12).unwrap();
        assert!((to_db(r.f_bm) + 4.93).abs() < 0.01);
    }

    #[test]
    fn detuning_zero_is_bright() {
        let t = detuning_sweep(reference_point(0.5, 1e-4), linspace(-0.2, 0.2, 41)).unwrap();
        let mid = t.rows[20];
        assert_eq!(mid.value, 0.0);
        assert!((mid.g_s_db() - 21.913).abs() < 0.01);
        assert!((mid.f_db() + 4.93).abs() < 0.05);
        let far = detuning_sweep(reference_point(0.5, 1e-4), vec![-1.5, 0.0, 1.5]).unwrap();
        for r in [far.rows[0], far.rows[2]] {
            assert!(r.g_s_db() < mid.g_s_db() - 3.0 && r.f_db() > 0.0);
        }
    }

    #[test]
    fn up_and_down_sweeps_agree() {
        let mut spec = SweepSpec::new(
            SweepAxis::Detuning,
            linspace(-0.5, 0.5, 201),
            reference_point(0.5, 1e-4),
        );
        spec.origin = Some(0.0);
        let rep = hysteresis_check(&spec).unwrap();
        assert_eq!(rep.multistable_points, 0);
        assert!(rep.max_relative_gap < 1e-12);
    }

    #[test]
    fn continuation_follows_upper_branch() {
        // a Kerr fold: ramping the drive detuning up keeps the high branch
        let base = OperatingPoint::new(
            SystemParams {
                omega_d: 1.0,
                kappa_a: 0.5,
                coupling: 1.0,
                kerr: 0.05,
                ..Default::default()
            },
            DriveParams::new(30.0),
        );
        let mut spec = SweepSpec::new(SweepAxis::Detuning, linspace(0.0, 2.0, 201), base);
        spec.quadrature = Quadrature::Output;
        let up = run_sweep(&spec).unwrap();
        assert!(up.multistable());
        let mut rev = spec.clone();
        rev.values.reverse();
        let down = run_sweep(&rev).unwrap();
        let x_up = up.rows.iter().find(|r| (r.value - 1.9).abs() < 1e-9).unwrap();
        let x_down = down.rows.iter().find(|r| (r.value - 1.9).abs() < 1e-9).unwrap();
        assert!(x_up.intensity > 2.0 * x_down.intensity);
        let rep = hysteresis_check(&spec).unwrap();
        assert!(rep.multistable_points > 0 && rep.max_relative_gap > 0.5);
    }

    #[test]
    fn bandwidth_basic() {
        let b = bandwidth(&reference_point(0.5, 1e-4), &BandwidthOptions::default()).unwrap();
        assert!(b.interval.0 < b.peak_delta && b.peak_delta < b.interval.1);
        assert!((b.gbp - b.g_s_peak.sqrt() * b.delta_omega).abs() < 1e-15);
        assert!(b.max_growth_in_band < 0.0);
        assert!(b.g_s_peak >= bright_analytics(&reference_point(0.5, 1e-4)).unwrap().signal_gain);
    }

    #[test]
    fn empty_band_without_gain() {
        let mut pt = reference_point(0.5, 1e-4);
        pt.system.kappa_g = 0.0;
        let opts = BandwidthOptions {
            points: 201,
            ..Default::default()
        };
        assert_eq!(bandwidth(&pt, &opts), Err(Error::EmptyBand));
    }

    #[test]
    fn to_bright_point_moves_gain_and_drive() {
        let mut pt = reference_point(0.5, 1e-4);
        pt.system.kappa_g = 0.0;
        pt.system.omega_d = 0.0;
        let bp = to_bright_point(&pt).unwrap();
        assert!((bp.system.kappa_g - 0.85).abs() < 1e-12);
        assert!((bp.system.omega_d + 0.3).abs() < 1e-12);
    }
}
