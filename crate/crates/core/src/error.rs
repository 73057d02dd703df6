//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by construction, dynamics, learning, experiments and IO.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions of an operand do not match what the operation requires.
    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: String,
        got: String,
    },

    /// A value violates a domain invariant (entry not ±1, bad hyperparameter, ...).
    #[error("invalid value: {0}")]
    InvalidValue(String),

    /// A number that must be finite is NaN or infinite.
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    /// Two patterns that must be distinct are equal.
    #[error("patterns {first} and {second} (1-based) are identical; interior patterns must be distinct")]
    DuplicatePattern { first: usize, second: usize },

    /// The request cannot be satisfied for counting reasons (e.g. more distinct
    /// patterns demanded than the state space holds).
    #[error("infeasible request: {0}")]
    Infeasible(String),

    /// Filesystem failure, with the offending path.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A file does not conform to one of the on-disk formats.
    #[error("bad file format: {0}")]
    Format(String),
}

impl Error {
    /// Helper for the common shape-mismatch case.
    pub(crate) fn shape(context: &'static str, expected: impl Into<String>, got: impl Into<String>) -> Self {
        Error::ShapeMismatch {
            context,
            expected: expected.into(),
            got: got.into(),
        }
    }

    /// Wraps an io::Error with the path it occurred on.
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
