use crate::util::c;
use crate::{Complex64, Error, Result};

/// Rates and frequencies of the two-mode model, in units of `kappa_b`.
///
/// Frequencies are only ever used through differences, so `omega_a` is
/// conventionally 0 and the others are offsets from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Drive frequency; the rotating frame is at this frequency.
    pub omega_d: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub kappa_g: f64,
    /// Beam-splitter coupling `J`.
    pub coupling: f64,
    /// Kerr coefficient `K` of mode `a`.
    pub kerr: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega_a: 0.0,
            omega_b: 0.0,
            omega_d: 0.0,
            kappa_a: 0.0,
            kappa_b: 1.0,
            kappa_g: 0.0,
            coupling: 0.0,
            kerr: 0.0,
        }
    }
}

impl SystemParams {
    pub fn delta_a(&self) -> f64 {
        self.omega_a - self.omega_d
    }

    pub fn delta_b(&self) -> f64 {
        self.omega_b - self.omega_d
    }

    /// Net gain rate `kappa_g - kappa_a`.
    pub fn kappa_n(&self) -> f64 {
        self.kappa_g - self.kappa_a
    }

    pub fn with_kappa_g(self, kappa_g: f64) -> Self {
        Self { kappa_g, ..self }
    }

    pub fn with_omega_d(self, omega_d: f64) -> Self {
        Self { omega_d, ..self }
    }

    pub fn with_kerr(self, kerr: f64) -> Self {
        Self { kerr, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_a", self.omega_a),
            ("omega_b", self.omega_b),
            ("omega_d", self.omega_d),
            ("kappa_a", self.kappa_a),
            ("kappa_b", self.kappa_b),
            ("kappa_g", self.kappa_g),
            ("coupling", self.coupling),
            ("kerr", self.kerr),
        ];
        for (field, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        for (field, v) in [
            ("kappa_a", self.kappa_a),
            ("kappa_g", self.kappa_g),
            ("coupling", self.coupling),
        ] {
            if v < 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be >= 0, got {v}"),
                });
            }
        }
        if self.kappa_b <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "kappa_b",
                reason: format!("must be > 0, got {}", self.kappa_b),
            });
        }
        Ok(())
    }

    /// False when `|K|` is not small against both loss rates. The model is
    /// still evaluated; callers may warn.
    pub fn is_weakly_nonlinear(&self) -> bool {
        self.kerr.abs() < 0.01 * self.kappa_a.min(self.kappa_b)
    }

    /// The 2x2 non-Hermitian matrix `H` in the frame rotating at `omega_d`,
    /// row-major.
    pub fn hamiltonian(&self) -> [[Complex64; 2]; 2] {
        [
            [c(self.delta_a(), self.kappa_n()), c(self.coupling, 0.0)],
            [c(self.coupling, 0.0), c(self.delta_b(), -self.kappa_b)],
        ]
    }
}

/// Coherent input on mode `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Input mean excitation number.
    pub n_in: f64,
    /// Reference phase of the input, radians.
    pub theta_0: f64,
}

impl Default for DriveParams {
    fn default() -> Self {
        Self {
            n_in: 0.0,
            theta_0: 0.0,
        }
    }
}

impl DriveParams {
    pub fn new(n_in: f64) -> Self {
        Self { n_in, theta_0: 0.0 }
    }

    /// `eps_in = sqrt(2 kappa_b N_in) e^{i theta_0}`.
    pub fn epsilon_in(&self, kappa_b: f64) -> Complex64 {
        Complex64::from_polar((2.0 * kappa_b * self.n_in).sqrt(), self.theta_0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_in.is_finite() && self.n_in >= 0.0) {
            return Err(Error::InvalidParameter {
                field: "n_in",
                reason: format!("must be finite and >= 0, got {}", self.n_in),
            });
        }
        if !self.theta_0.is_finite() {
            return Err(Error::InvalidParameter {
                field: "theta_0",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }
}

/// A full operating point: system plus drive.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OperatingPoint {
    pub system: SystemParams,
    pub drive: DriveParams,
}

impl OperatingPoint {
    pub fn new(system: SystemParams, drive: DriveParams) -> Self {
        Self { system, drive }
    }

    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        self.drive.validate()
    }
}
