use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value fell outside a configured validity or magnitude range.
    #[error("out of range: {0}")]
    Range(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    /// Two terms driven by the same pump would need different amplitudes.
    #[error("pump {pump} cannot be balanced: {reason}")]
    Unbalanceable { pump: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}
