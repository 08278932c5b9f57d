use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DdfError {
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid scheme configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("negative density {value:e} in cell {cell} at t = {t}")]
    NegativeDensity { cell: usize, value: f64, t: f64 },

    #[error("density {rho:e} at or below the vacuum threshold where the pressure law is singular")]
    VacuumPressure { rho: f64 },

    #[error("regularization parameter must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("Riemann data do not produce a delta shock: {0}")]
    NotADelta(String),

    #[error("Riemann data do not produce a vacuum: {0}")]
    NotAVacuum(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid time parameters: {0}")]
    InvalidTimes(String),
}

pub type Result<T> = std::result::Result<T, DdfError>;
