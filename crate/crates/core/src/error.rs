use thiserror::Error;

/// Errors raised by the classification library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a valid signature: {0}")]
    InvalidSignature(String),

    #[error("signature needs at least {min} exponents, got {got}")]
    TooFewExponents { min: usize, got: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural invariant failed. This always signals a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("degree bound {bound} too small: {detail}")]
    BoundTooSmall { bound: i64, detail: String },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
