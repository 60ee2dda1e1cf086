//! Crate-wide error type.

use alloc::string::String;

/// Errors surfaced by solvers and constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated a documented precondition.
    InvalidInput(String),
    /// An iterative eigensolver failed to converge; carries context
    /// (matrix dimension, iteration cap, which eigenpair).
    NoConvergence(String),
    /// A convergence search exhausted its configured ceiling.
    CeilingReached(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::CeilingReached(msg) => write!(f, "ceiling reached: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
