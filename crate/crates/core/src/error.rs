//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the exact-arithmetic and moduli layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero denominator polynomial")]
    ZeroDenominator,

    #[error("substitution vanishes a denominator; choose generic parameters")]
    VanishingDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported scope: {0}")]
    UnsupportedScope(String),

    #[error("enumeration size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedScope(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
