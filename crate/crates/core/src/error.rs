use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems so callers can match on what actually went wrong.
#[derive(Error, Debug)]
pub enum Error {
    #[error("geometry violation: {0}")]
    GeometryViolation(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("resolution error: {0}")]
    ResolutionError(String),

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("CFL violation: dt = {dt:.3e} exceeds limit {limit:.3e}")]
    CflViolation { dt: f64, limit: f64 },

    #[error("non-finite value detected: {0}")]
    NonFinite(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("non-integrable tail: {0}")]
    NonIntegrableTail(String),

    #[error("parameter error: {0}")]
    ParameterError(String),

    #[error("convention mismatch: expected {expected:?}, got {got:?}")]
    ConventionMismatch { expected: String, got: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("non-positive data: {0}")]
    NonPositiveData(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
