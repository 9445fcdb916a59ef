//! Run configuration: a TOML subset of `key = value` pairs grouped under
//! `[section]` headers, with `#` comments.
//!
//! Frequencies are relative to `omega_a`, rates and frequencies are in units
//! of `kappa_b`.

use kerramp_core::experiments::linspace;
use kerramp_core::{DriveParams, OperatingPoint, SystemParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemSection {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Drive frequency; the bright-point value when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_d: Option<f64>,
    pub kappa_a: f64,
    pub kappa_b: f64,
    /// Gain rate; the bright-point value when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_g: Option<f64>,
    /// Inter-cavity coupling `J`. Required.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    pub kerr: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        Self {
            omega_a: 0.0,
            omega_b: 0.0,
            omega_d: None,
            kappa_a: 0.0,
            kappa_b: 1.0,
            kappa_g: None,
            coupling: None,
            kerr: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriveSection {
    pub n_in: f64,
    pub theta_0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeSection {
    pub omega: f64,
    /// Measured quadrature angle. When absent, single-point commands follow
    /// the output phase and sweeps hold the baseline bright-point angle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

/// Grid for the swept parameter. Absent fields fall back to the
/// per-command defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl SweepSection {
    pub fn grid(&self, start: f64, stop: f64, points: usize) -> Vec<f64> {
        linspace(
            self.start.unwrap_or(start),
            self.stop.unwrap_or(stop),
            self.points.unwrap_or(points),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandwidthSection {
    pub span: f64,
    pub points: usize,
}

impl Default for BandwidthSection {
    fn default() -> Self {
        Self {
            span: 2.0,
            points: 2001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GbpSection {
    pub n_in: Vec<f64>,
}

impl Default for GbpSection {
    fn default() -> Self {
        Self {
            n_in: linspace(0.3, 1.0, 8),
        }
    }
}

/// Monte-Carlo settings. Absent step, horizon and burn-in are sized from
/// the drift matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSection {
    pub delta: Vec<f64>,
    pub seed: u64,
    pub n_traj: usize,
    pub min_batches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<f64>,
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            delta: vec![0.0],
            seed: 0,
            n_traj: 1,
            min_batches: 64,
            dt: None,
            t_max: None,
            burn_in: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    pub drive: DriveSection,
    pub probe: ProbeSection,
    pub sweep: SweepSection,
    pub bandwidth: BandwidthSection,
    pub gbp: GbpSection,
    pub mc: McSection,
}

const KEYS: &[(&str, &[&str])] = &[
    (
        "system",
        &["omega_a", "omega_b", "omega_d", "kappa_a", "kappa_b", "kappa_g", "coupling", "kerr"],
    ),
    ("drive", &["n_in", "theta_0"]),
    ("probe", &["omega", "theta"]),
    ("sweep", &["start", "stop", "points"]),
    ("bandwidth", &["span", "points"]),
    ("gbp", &["n_in"]),
    ("mc", &["delta", "seed", "n_traj", "min_batches", "dt", "t_max", "burn_in"]),
];

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of `key` inside `[section]` (or of the header itself when `key` is
/// `None`), for diagnostics.
fn find_line(text: &str, section: &str, key: Option<&str>) -> usize {
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = h.trim().to_string();
            if key.is_none() && current == section {
                return i + 1;
            }
            continue;
        }
        if let Some(k) = key {
            let name = line.split('=').next().unwrap_or("").trim();
            if current == section && name == k {
                return i + 1;
            }
        }
    }
    0
}

fn check_keys(text: &str, table: &toml::Table) -> Result<(), ConfigError> {
    for (section, value) in table {
        let Some((_, known)) = KEYS.iter().find(|(s, _)| s == section) else {
            let line = match value {
                toml::Value::Table(_) => find_line(text, section, None),
                _ => find_line(text, "", Some(section)),
            };
            return Err(ConfigError::UnknownKey {
                key: section.clone(),
                line,
            });
        };
        let toml::Value::Table(inner) = value else {
            return Err(ConfigError::Parse {
                line: find_line(text, "", Some(section)),
                message: format!("`{section}` must be a [section]"),
            });
        };
        if let Some(key) = inner.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(ConfigError::UnknownKey {
                key: format!("{section}.{key}"),
                line: find_line(text, section, Some(key)),
            });
        }
    }
    Ok(())
}

fn parse_error(text: &str, e: toml::de::Error) -> ConfigError {
    let line = e.span().map(|s| line_of(text, s.start)).unwrap_or(0);
    ConfigError::Parse {
        line,
        message: e.message().to_string(),
    }
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let table: toml::Table = text.parse().map_err(|e| parse_error(text, e))?;
    check_keys(text, &table)?;
    let cfg: RunConfig = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    cfg.validate()?;
    Ok(cfg)
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.to_string(),
        reason: reason.into(),
    }
}

impl RunConfig {
    /// Serializes back to the configuration grammar.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let s = &self.system;
        let finite = |field: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(invalid(field, "must be finite"))
            }
        };
        let non_negative = |field: &str, v: f64| {
            finite(field, v)?;
            if v < 0.0 {
                return Err(invalid(field, format!("must be non-negative, got {v}")));
            }
            Ok(())
        };
        finite("system.omega_a", s.omega_a)?;
        finite("system.omega_b", s.omega_b)?;
        if let Some(w) = s.omega_d {
            finite("system.omega_d", w)?;
        }
        non_negative("system.kappa_a", s.kappa_a)?;
        finite("system.kappa_b", s.kappa_b)?;
        if s.kappa_b <= 0.0 {
            return Err(invalid("system.kappa_b", format!("must be positive, got {}", s.kappa_b)));
        }
        if let Some(g) = s.kappa_g {
            non_negative("system.kappa_g", g)?;
        }
        match s.coupling {
            None => return Err(invalid("system.coupling", "required")),
            Some(j) => non_negative("system.coupling", j)?,
        }
        finite("system.kerr", s.kerr)?;
        non_negative("drive.n_in", self.drive.n_in)?;
        finite("drive.theta_0", self.drive.theta_0)?;
        finite("probe.omega", self.probe.omega)?;
        if let Some(t) = self.probe.theta {
            finite("probe.theta", t)?;
        }
        if let Some(v) = self.sweep.start {
            finite("sweep.start", v)?;
        }
        if let Some(v) = self.sweep.stop {
            finite("sweep.stop", v)?;
        }
        if let (Some(a), Some(b)) = (self.sweep.start, self.sweep.stop) {
            if a == b {
                return Err(invalid("sweep.stop", "must differ from sweep.start"));
            }
        }
        if self.sweep.points == Some(0) {
            return Err(invalid("sweep.points", "must be >= 1"));
        }
        finite("bandwidth.span", self.bandwidth.span)?;
        if self.bandwidth.span <= 0.0 {
            return Err(invalid("bandwidth.span", "must be positive"));
        }
        if self.bandwidth.points < 3 {
            return Err(invalid("bandwidth.points", "must be >= 3"));
        }
        if self.gbp.n_in.is_empty() {
            return Err(invalid("gbp.n_in", "must not be empty"));
        }
        for &n in &self.gbp.n_in {
            if !(n.is_finite() && n > 0.0) {
                return Err(invalid("gbp.n_in", format!("entries must be positive, got {n}")));
            }
        }
        let mc = &self.mc;
        if mc.delta.iter().any(|d| !d.is_finite()) {
            return Err(invalid("mc.delta", "entries must be finite"));
        }
        if mc.n_traj == 0 {
            return Err(invalid("mc.n_traj", "must be >= 1"));
        }
        if mc.min_batches < 2 {
            return Err(invalid("mc.min_batches", "must be >= 2"));
        }
        if let Some(dt) = mc.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(invalid("mc.dt", "must be positive"));
            }
        }
        if let Some(t) = mc.t_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid("mc.t_max", "must be positive"));
            }
        }
        if let Some(b) = mc.burn_in {
            if !(0.0..1.0).contains(&b) {
                return Err(invalid("mc.burn_in", "must lie in [0, 1)"));
            }
        }
        Ok(())
    }

    /// System parameters with optional fields left at zero; see
    /// [`crate::commands::operating_point`] for bright-point completion.
    pub fn system_params(&self) -> SystemParams {
        let s = &self.system;
        SystemParams {
            omega_a: s.omega_a,
            omega_b: s.omega_b,
            omega_d: s.omega_d.unwrap_or(0.0),
            kappa_a: s.kappa_a,
            kappa_b: s.kappa_b,
            kappa_g: s.kappa_g.unwrap_or(0.0),
            coupling: s.coupling.unwrap_or(0.0),
            kerr: s.kerr,
        }
    }

    pub fn drive_params(&self) -> DriveParams {
        DriveParams {
            n_in: self.drive.n_in,
            theta_0: self.drive.theta_0,
        }
    }

    pub fn needs_bright_completion(&self) -> bool {
        self.system.kappa_g.is_none() || self.system.omega_d.is_none()
    }

    pub fn partial_point(&self) -> OperatingPoint {
        OperatingPoint::new(self.system_params(), self.drive_params())
    }
}
