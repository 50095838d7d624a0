use thiserror::Error;

/// Failure modes shared by the solvers and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(&'static str),
    #[error("model mean is infinite")]
    InfiniteMean,
    #[error("unsupported for this model: {0}")]
    Unsupported(&'static str),
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("no sign change in bracket [{lo:e}, {hi:e}]")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("defining map is not monotone near {at:e}")]
    NonMonotone { at: f64 },
    #[error("root search stopped with relative residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("system is unstable: traffic intensity {rho} >= 1")]
    UnstableSystem { rho: f64 },
    #[error("stopping rule not met within {steps} steps")]
    HorizonExceeded { steps: u64 },
    #[error("quadrature did not reach tolerance (estimated error {error:e})")]
    Quadrature { error: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
