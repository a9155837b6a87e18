//! File formats, reports and built-in examples for the `coframe` CLI.

pub mod examples;
pub mod files;
pub mod report;

use coframe_core::Error as MathError;
use thiserror::Error;

/// Errors surfaced by the command-line driver, split by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(MathError),
}

impl CliError {
    /// 1 for malformed input, 2 for mathematical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::Parse { .. } | MathError::Index { .. } | MathError::InvalidFlag(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Math(other),
        }
    }
}

impl From<files::FileError> for CliError {
    fn from(e: files::FileError) -> Self {
        CliError::Input(e.to_string())
    }
}
