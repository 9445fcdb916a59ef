//! Two coupled bosonic modes with gain and Kerr nonlinearity, operated as a
//! phase-sensitive amplifier.
//!
//! Mode `a` carries the gain (`kappa_g`), the loss port (`kappa_a`) and the Kerr
//! term; mode `b` is driven coherently at `omega_d`. The crate covers:
//!
//! - [`eigen`]: linear eigenanalysis of the non-Hermitian two-mode matrix and the
//!   bright-eigenmode operating point.
//! - [`steady`]: the mean-field steady state (cubic intensity equation, mean
//!   fields, output amplitude, signal gain).
//! - [`fluctuations`]: the linearized quadrature dynamics, noise gain, noise
//!   figure and stability.
//! - [`langevin`]: independent checks by time integration, a Lyapunov solver
//!   and a Monte-Carlo linear SDE integrator.
//! - [`experiments`]: parameter sweeps, operational bandwidth and
//!   gain-bandwidth product.
//!
//! All rates and frequencies are in units of `kappa_b`.

// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigen;
pub mod error;
pub mod experiments;
pub mod fluctuations;
pub mod langevin;
pub mod params;
pub mod steady;
mod util;

pub use eigen::{BrightPoint, EigenCoefficients, EigenSolution};
pub use error::{Error, Result};
pub use experiments::{BandwidthResult, SweepAxis, SweepRow, SweepSpec, SweepTable};
pub use fluctuations::{DiffusionMatrix, DriftMatrix, NoiseResult};
pub use langevin::{CovarianceEstimate, IntegrationConfig};
pub use params::{DriveParams, OperatingPoint, SystemParams};
pub use steady::{CubicProblem, Quadrature, SteadyState};

pub use num_complex::Complex64;
pub use util::{to_db, DB_FLOOR};
