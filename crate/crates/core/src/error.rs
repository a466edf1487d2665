use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("digit {digit} is outside the alphabet 0..={m}")]
    DigitOutOfRange { digit: u8, m: u8 },

    #[error("undefined word operation: {0}")]
    UndefinedWordOp(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("kneading data too shallow: comparison undecided at depth {0}")]
    Undecided(usize),

    #[error("no admissible words of length {0}")]
    EmptyBasis(usize),

    #[error("refused: {0}")]
    Refused(String),

    #[error("transfer system has not been solved")]
    Unsolved,

    #[error("linear-domain iteration overflowed after {0} steps")]
    Overflow(usize),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("parse error: {0}")]
    Parse(String),
}
