//! File formats, exporters and verification suites on top of
//! `tiltstab-core`, shared by the `tiltstab` binary and its tests.

pub mod classify;
pub mod document;
pub mod export;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Math(#[from] tiltstab_core::Error),
    #[error("io error: {0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// Process exit code: 2 for input problems, 3 for violated
    /// mathematical preconditions, 4 for failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Math(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}
