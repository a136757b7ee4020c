use thiserror::Error;

/// Errors produced by the kernel. Every precondition failure is reported
/// through this type; nothing in the public API panics on bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("identity `{identity}` violated at {location}")]
    IdentityViolated { identity: String, location: String },

    #[error("not a tripotent: {0}")]
    NotTripotent(String),

    #[error("singular element: {0}")]
    Singular(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degree bound {bound} is below the generator degree {needed}")]
    DegreeTooSmall { bound: usize, needed: usize },

    #[error("point has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
