use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cap exceeded: {what} reached {value} (cap {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generation failure: images do not generate the group")]
    GenerationFailure,

    #[error("matrix is not invertible")]
    NonInvertible,

    #[error("grading mismatch at degree {degree}: enumerated {found}, predicted {predicted}")]
    GradingMismatch { degree: usize, found: u64, predicted: u64 },

    #[error("automorphism does not act trivially on the quotient group")]
    NotInAutR,

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("refuted: {0}")]
    Refuted(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
