use thiserror::Error;

/// Errors produced by the permrun library.
///
/// Token and position indices in messages are 1-based, matching the
/// one-line notation used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("token {index}: `{token}` is not an integer")]
    InvalidToken { index: usize, token: String },

    #[error("token {index}: value {value} is outside 1..={len}")]
    OutOfRange { index: usize, value: i64, len: usize },

    #[error("token {index}: duplicate value {value}")]
    DuplicateValue { index: usize, value: String },

    #[error("entry {index} cannot be ordered against the other entries")]
    Incomparable { index: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("value {value} does not occur in the block")]
    NotInBlock { value: usize },

    #[error("invalid matching function: {0}")]
    InvalidMatchingFunction(String),

    #[error("search space of {size} exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("graph: {0}")]
    InvalidGraph(String),

    #[error("clique size {k} is not within 1..={l}")]
    CliqueSize { k: usize, l: usize },

    #[error("invalid clique: {0}")]
    InvalidClique(String),

    #[error("size bound violated: {0}")]
    BoundViolated(String),

    #[error("matcher and brute force disagree on {0}")]
    OracleDisagreement(String),

    #[error("generated instance breaks a size formula: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
