use std::path::PathBuf;

use gwakit_core::Error as CoreError;
use thiserror::Error;

/// Errors surfaced by the command-line driver, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("malformed input {path}: {reason}")]
    Malformed { path: PathBuf, reason: String },
    #[error("{0}")]
    Verification(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Malformed { .. } => 4,
            CliError::Verification(_) => 5,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::Capacity { .. } => 3,
                CoreError::UnknownCatalogId { .. } | CoreError::BadSpec(_) => 2,
                _ => 1,
            },
        }
    }

    pub fn malformed(path: impl Into<PathBuf>, reason: impl ToString) -> CliError {
        CliError::Malformed {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Capacity { .. } => CliError::Capacity(e.to_string()),
            CoreError::UnknownCatalogId { .. } | CoreError::BadSpec(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
