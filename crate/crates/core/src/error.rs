use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate letter {0} in word")]
    DuplicateLetter(u32),
    #[error("word is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("position {0} out of range for word of length {1}")]
    OutOfRange(usize, usize),
    #[error("shifting letter {letter} by {shift} would leave the positive integers")]
    NonPositiveShift { letter: u32, shift: i64 },
    #[error("input size {size} exceeds the configured cap {cap}")]
    SizeLimit { size: usize, cap: usize },
    #[error("permutation has odd size {0}")]
    OddSize(usize),
    #[error("permutation is not in the image of the binary-word map (it contains 213 or 231)")]
    NotInImage,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("forward witness failed the order-isomorphism check")]
    WitnessCheckFailed,
    #[error("invalid occurrence: {0}")]
    InvalidOccurrence(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
