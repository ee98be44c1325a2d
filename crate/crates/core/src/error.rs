use thiserror::Error;

/// Errors produced by the permutation toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("duplicate value {0}")]
    Duplicate(u64),
    #[error("value {value} out of range 1..{len}")]
    OutOfRange { value: u64, len: usize },
    #[error("invalid character {0:?} in compact permutation")]
    InvalidChar(char),
    #[error("invalid token {0:?} in comma-separated permutation")]
    InvalidToken(String),
    #[error("mixed compact and comma notation in {0:?}")]
    MixedStyle(String),
    #[error("compact notation supports length at most 35, got {0}")]
    CompactTooLong(usize),
    #[error("pattern length {pattern} exceeds permutation length {text}")]
    PatternTooLong { pattern: usize, text: usize },
    #[error("length mismatch: outer permutation has {outer} entries but {blocks} blocks were given")]
    BlockCountMismatch { outer: usize, blocks: usize },
    #[error("permutation length {len} exceeds the supported cap of {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("length {len} is below the minimum of {min}")]
    TooShort { len: usize, min: usize },
    #[error("profile is missing an entry for pattern {0}")]
    MissingProfileEntry(String),
    #[error("invalid density profile: {0}")]
    InvalidProfile(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("{which} permutation {perm} is not 3-inflatable")]
    NotInflatable { which: &'static str, perm: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
