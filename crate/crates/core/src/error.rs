use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division of {numerator} by {denominator}")]
    InexactDivision { numerator: String, denominator: String },

    #[error("invalid quantum characteristic {0}: e must be 0 or at least 2")]
    InvalidQuantumChar(u32),

    #[error("parse error: {0}")]
    Parse(String),

    /// Input outside an operation's domain (wrong level, unrestricted label, ...).
    #[error("{0}")]
    Domain(String),

    /// An internal consistency check failed. Reaching this means a bug.
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
