//! Error type shared by the library layer.

use thiserror::Error;

/// Errors raised by library operations that take untrusted input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A rational literal could not be parsed.
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    /// A color name is not part of the declared alphabet.
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    /// The alphabet declaration is empty or repeats a name.
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    /// A structural precondition of an operation was violated.
    #[error("contract violation: {0}")]
    Contract(String),
}
