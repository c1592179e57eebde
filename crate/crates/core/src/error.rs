use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {index} not in 1..={len}")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("forest too small: {size} vertices, need at least {needed}")]
    ForestTooSmall { size: usize, needed: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size {size} outside the legal range {lo}..={hi}")]
    SizeOutOfRange { size: usize, lo: usize, hi: usize },

    #[error("guest too large: {guest} vertices for a host of {host}")]
    GuestTooLarge { guest: usize, host: usize },

    #[error("type-3 block unavailable: {0}")]
    Type3BlockUnavailable(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("internal postcondition failed in {branch}: {detail}")]
    Postcondition { branch: &'static str, detail: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
