use std::path::PathBuf;
use std::process::ExitCode;

use airpocket::{BijectionError, ClosedFormError, EnumError, PathError, SeriesError, StatError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Stat(#[from] StatError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    BFile {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for anything the caller typed wrong, 1 for failed checks and
    /// runtime trouble.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_)
            | CliError::Path(_)
            | CliError::Enum(EnumError::UnknownFamily(_))
            | CliError::Enum(EnumError::LimitExceeded { .. })
            | CliError::Stat(StatError::Unknown(_))
            | CliError::Stat(StatError::BadParameter(_))
            | CliError::Stat(StatError::TypeMismatch { .. })
            | CliError::Series(SeriesError::UnknownId(_))
            | CliError::Series(SeriesError::BadParameter)
            | CliError::Series(SeriesError::BadOrder)
            | CliError::BFile { .. } => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}
