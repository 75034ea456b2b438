use std::path::PathBuf;

use spinal_core::embedder::EmbedError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, infeasible parameters.
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Read { .. } => 2,
            CliError::Write { .. } | CliError::Verification(_) | CliError::NotFound(_) => 1,
            CliError::Budget(_) => 3,
        }
    }

    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::Interlace(_) | EmbedError::Recipe(_) => CliError::invalid(e),
            EmbedError::Embedding(_) | EmbedError::ConstructionFailed { .. } => CliError::Verification(e.to_string()),
        }
    }
}
