//! Process-level error classification and exit codes.

/// Exit codes: 0 success, 1 domain rejection, 2 malformed input, 3 internal
/// error, 4 entry-size cap exceeded.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The input is invalid: bad JSON, schema violations, shape mismatches,
    /// `d∘d ≠ 0`. Exit code 2.
    #[error("{0}")]
    Malformed(String),
    /// The input is well-formed but the computation rejects it (for example
    /// a non-dualizing candidate where a dualizing complex is required).
    /// Exit code 1.
    #[error("{0}")]
    Domain(String),
    /// A theoretically impossible failure: the lifting solver found no
    /// solution, or an axiom suite failed. Exit code 3.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

pub const EXIT_ENTRY_CAP: i32 = 4;
