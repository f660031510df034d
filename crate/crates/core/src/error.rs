use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("monoid mismatch: {0}")]
    MonoidMismatch(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("value {value} out of range for arity {arity}")]
    OutOfRange { value: usize, arity: usize },

    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),

    #[error("requires a finite monoid: {0}")]
    InfiniteMonoid(String),

    #[error("integer overflow in pigment arithmetic")]
    Overflow,

    #[error("resource limit exceeded: {needed} words to scan, cap is {cap}")]
    ResourceLimit { needed: String, cap: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}
