//! Error type shared by every numerical and physical routine.

use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("root not bracketed: f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("divergent value: {0}")]
    DivergentValue(String),
    #[error("divergent occupation at zero energy with unit fugacity")]
    DivergentOccupation,
    #[error("normalization failed: target {target:e}, reached {reached:e}")]
    NormalizationFailure { target: f64, reached: f64 },
    #[error("both condensed and thermal branches converge at mu = {mu:e} J")]
    AmbiguousBranch { mu: f64 },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl Error {
    /// Stable variant name, used as a machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonConvergence { .. } => "NonConvergence",
            Error::NoBracket { .. } => "NoBracket",
            Error::DomainError(_) => "DomainError",
            Error::DivergentValue(_) => "DivergentValue",
            Error::DivergentOccupation => "DivergentOccupation",
            Error::NormalizationFailure { .. } => "NormalizationFailure",
            Error::AmbiguousBranch { .. } => "AmbiguousBranch",
            Error::ModelMismatch(_) => "ModelMismatch",
            Error::DegenerateFit(_) => "DegenerateFit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::DomainError(msg.into()))
}
