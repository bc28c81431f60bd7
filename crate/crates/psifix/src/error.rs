//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A table or iteration depth request exceeded the configured capacity.
    #[error("capacity exceeded: requested {requested}, cap {cap}")]
    Capacity { requested: usize, cap: usize },

    /// An index fell outside the valid range of a table or sequence.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A partial sum hit exactly zero, so its reciprocal is undefined.
    #[error("zero partial sum at index {index}")]
    ZeroPartialSum { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
