use std::path::PathBuf;

use lhk_core::ErrorKind;

/// Failures that stop a command before a report can be produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {detail}")]
    Parse { path: PathBuf, detail: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Core(lhk_core::Error),
    #[error("unknown cell id {0:?}")]
    UnknownCell(String),
}

impl CliError {
    /// Process exit code: 1 input-invalid, 2 check-failed or unknown cell, 3 I/O or parse.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 3,
            CliError::Invalid(_) | CliError::Core(_) => 1,
            CliError::UnknownCell(_) => 2,
        }
    }

    pub fn kind(&self) -> Option<ErrorKind> {
        match self {
            CliError::Core(e) => Some(e.kind),
            _ => None,
        }
    }
}

impl From<lhk_core::Error> for CliError {
    fn from(e: lhk_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
