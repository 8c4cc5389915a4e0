//! Errors of the command layer and their exit codes.

use crate::cache::CacheError;
use crate::eval::EvalError;
use crate::parse::ParseError;

/// Everything a command can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid flags or flag combinations.
    #[error("{0}")]
    Usage(String),
    /// The expression could not be parsed.
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    /// The expression uses a form the command cannot evaluate.
    #[error("{0}")]
    Eval(#[from] EvalError),
    /// Computed values differ from `--expect`.
    #[error("{0}")]
    Mismatch(String),
    /// A cache file is invalid or stale.
    #[error("{0}")]
    Cache(#[from] CacheError),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// The file involved.
        path: String,
        /// The underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    /// The process exit code: 1 for usage, parse and input errors, 2 for
    /// expectation mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            _ => 1,
        }
    }
}

/// Exit code for an internal assertion failure (a panic).
pub const EXIT_INTERNAL: i32 = 3;
