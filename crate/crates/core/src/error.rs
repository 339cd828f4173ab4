//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violated a precondition (range, ordering,
    /// dimension, parameter regime).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A quantity that must be numerically real/consistent exceeded its
    /// tolerance (e.g. a fidelity with a large imaginary residue).
    #[error("numeric consistency violation: {0}")]
    NumericConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::NumericConsistency(msg.into())
    }
}
