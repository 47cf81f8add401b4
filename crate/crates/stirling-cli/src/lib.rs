//! Verification campaigns, reports and file formats behind the `stirling`
//! binary.

pub mod campaign;
pub mod checks;
pub mod commands;
pub mod config;
pub mod golden;
pub mod plot;
pub mod report;
pub mod triangles;

use stirling_core::analysis::AnalysisError;
use stirling_core::linalg::LinalgError;
use stirling_core::oracles::OracleError;
use stirling_core::series::SeriesError;

/// Exit status: every claim in its expected status.
pub const EXIT_OK: i32 = 0;
/// Exit status: some claim ended in an unexpected status, or a computation failed.
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("resource guard tripped: {0}")]
    Guard(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Compute(_) | CliError::Io(_) => EXIT_UNEXPECTED,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            OracleError::InvalidInput(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Compute(e.to_string())
    }
}
