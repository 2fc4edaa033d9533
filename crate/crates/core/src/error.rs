use thiserror::Error;

/// Errors raised when an operation is called outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("rho must lie in [0, 1], got {0}")]
    RhoOutOfRange(f64),
    #[error("eta must lie in [0, 1], got {0}")]
    EtaOutOfRange(f64),
    #[error("coin is not unitary (max |U^dagger U - I| = {0:e})")]
    NonUnitaryCoin(f64),
    #[error("invalid game letter '{letter}' at position {position}; expected A or B")]
    InvalidLetter { letter: char, position: usize },
    #[error("game sequence is empty")]
    EmptySequence,
    #[error("step count must be at least 1")]
    ZeroSteps,
    #[error("dense oracle supports at most {max} steps, got {steps}")]
    OracleTooLarge { steps: usize, max: usize },
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
    #[error("maximum sequence length must lie in [1, 8], got {0}")]
    MaxLenOutOfRange(usize),
    #[error("series is empty")]
    EmptySeries,
    #[error("series times must be strictly increasing (violated at index {0})")]
    NonIncreasingTime(usize),
    #[error("series length mismatch: {actual} entries, expected {expected}")]
    LengthMismatch { actual: usize, expected: usize },
    #[error("invalid walker state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;
