use std::path::PathBuf;

use thiserror::Error;

/// Failure of a CLI run, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure{}: {source}", cell.as_ref().map(|c| format!(" at {c}")).unwrap_or_default())]
    Numerical {
        cell: Option<String>,
        #[source]
        source: optomech_core::Error,
    },
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub(crate) fn numerical(source: optomech_core::Error) -> Self {
        CliError::Numerical { cell: None, source }
    }

    pub(crate) fn at(cell: String, source: optomech_core::Error) -> Self {
        CliError::Numerical {
            cell: Some(cell),
            source,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
