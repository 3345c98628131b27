use thiserror::Error;

/// Parse and validation failures for paths and words. Positions are 1-based
/// step (or character) indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("down step with subscript 0 at step {position}")]
    ZeroSubscript { position: usize },
    #[error("consecutive down steps at step {position}")]
    ConsecutiveDowns { position: usize },
    #[error("height goes negative at step {position}")]
    NegativeHeight { position: usize },
    #[error("path ends at height {height}, expected 0")]
    NonzeroFinalHeight { height: i64 },
    #[error("invalid Motzkin word at step {position}: {reason}")]
    InvalidMotzkin { position: usize, reason: String },
    #[error("invalid meander word: {0}")]
    InvalidMeander(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{family} at n={n} has {count} members, above the limit of {limit}")]
    LimitExceeded {
        family: String,
        n: usize,
        count: String,
        limit: u64,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatError {
    #[error("statistic {stat} does not apply to {object}")]
    TypeMismatch { stat: String, object: String },
    #[error("unknown statistic {0:?}")]
    Unknown(String),
    #[error("statistic parameter must be at least 1, got {0}")]
    BadParameter(u32),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("path {0} is not prime")]
    NotPrime(String),
    #[error("word {0} is not a nonempty peakless Motzkin path")]
    InvalidWord(String),
    #[error("inverse dispatch failed on {0}")]
    Dispatch(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has a non-invertible constant term")]
    NonInvertible,
    #[error("square root needs constant term exactly 1")]
    SqrtConstant,
    #[error("coefficient {index} is nonzero, cannot divide by x^{shift}")]
    NonzeroLowOrder { index: usize, shift: usize },
    #[error("coefficient {index} is not divisible by the marker power")]
    MarkerDivision { index: usize },
    #[error("fixed point stalled at iteration {iteration}: iterates agree only below index {agreement}")]
    Stagnation { iteration: usize, agreement: usize },
    #[error("fixed point did not settle after {0} iterations")]
    NoConvergence(usize),
    #[error("{id}: closed form and functional equation differ at x^{index}")]
    Mismatch { id: String, index: usize },
    #[error("{id}: coefficient of x^{index} is not an integer")]
    NonIntegral { id: String, index: usize },
    #[error("unknown generating function {0:?}")]
    UnknownId(String),
    #[error("parameter k must be at least 1")]
    BadParameter,
    #[error("order must be at least 1")]
    BadOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{0}")]
    Domain(String),
}
