use std::io;
use std::path::PathBuf;

use mpm_core::instance::InstanceError;
use mpm_core::oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: InstanceError },
    #[error("{0} instance(s) failed to parse")]
    PartialParse(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Guard(#[from] OracleError),
    #[error("failed to write report: {0}")]
    Report(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Report(_) => 1,
            CliError::Parse { .. } | CliError::PartialParse(_) => 3,
            CliError::Config(_) => 4,
            CliError::Guard(_) => 5,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
