use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("eigenfrequencies coalesce (|w+ - w-| = {splitting:e}); eigenmode decomposition is singular at an exceptional point")]
    DegenerateEigenmodes { splitting: f64 },

    #[error("no bright-eigenmode gain rate in (kappa_a, kappa_a + kappa_b)")]
    NoBrightPoint,

    #[error("bright-eigenmode condition has {} roots: {roots:?}", roots.len())]
    AmbiguousRoot { roots: Vec<f64> },

    #[error("coupling J is zero; mode a receives no drive")]
    ZeroCoupling,

    #[error("steady-state linear system is singular")]
    SingularSystem,

    #[error("input excitation number is zero; gain is undefined")]
    ZeroInput,

    #[error("parameters are not at a bright point (C1 = {c1:e}, C2 = {c2:e})")]
    NotBrightPoint { c1: f64, c2: f64 },

    #[error("Kerr coefficient is zero; bright-point intensity diverges")]
    ZeroKerr,

    #[error("R + i*omega is singular at omega = {omega}")]
    SingularAtFrequency { omega: f64 },

    #[error("signal gain is zero; noise figure undefined")]
    ZeroSignalGain,

    #[error("mean-field intensity exceeded {threshold:e} at t = {time}")]
    Diverged { time: f64, threshold: f64 },

    #[error("drift matrix is not stable (max Re(lambda) = {max_re:e})")]
    UnstableDrift { max_re: f64 },

    #[error("diffusion matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NonPsdDiffusion { min_eigenvalue: f64 },

    #[error("invalid integration config: {0}")]
    InvalidConfig(String),

    #[error("no detuning satisfies both the 3 dB gain and F < 0 dB conditions")]
    EmptyBand,

    #[error("sweep grid must be strictly monotone and non-empty")]
    BadGrid,
}
