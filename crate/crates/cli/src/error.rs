use std::path::PathBuf;

use ddf_core::DdfError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config: {0}")]
    Config(String),

    #[error("solver: {0}")]
    Solver(DdfError),

    #[error("in-loop check failed: {0}")]
    Check(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 = configuration, 2 = numerical invariant, 3 = IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 1,
            CliError::Solver(e) => match e {
                DdfError::NegativeDensity { .. }
                | DdfError::NonFinite { .. }
                | DdfError::VacuumPressure { .. } => 2,
                _ => 1,
            },
            CliError::Check(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<DdfError> for CliError {
    fn from(e: DdfError) -> Self {
        CliError::Solver(e)
    }
}
