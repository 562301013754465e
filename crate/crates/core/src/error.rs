//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the CLI exit codes: scenario/config problems are
/// usage errors (exit 1), `Domain` covers mathematically well-posed requests
/// with no answer (empty cooling window, non-convergence, singular systems;
/// exit 2), and `Io` is file-system trouble (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    /// A scenario parameter violates its invariant. Names the offending field.
    #[error("invalid scenario: {field}: {message}")]
    InvalidScenario { field: String, message: String },

    /// A configuration file could not be parsed. Line numbers are 1-based.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    /// A computation has no result in the requested regime.
    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidScenario {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
