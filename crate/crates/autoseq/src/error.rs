use thiserror::Error;

/// Errors shared across the whole engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("numeration systems differ: {0} vs {1}")]
    SystemMismatch(&'static str, &'static str),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("state budget of {budget} states exceeded during {during}")]
    StateBudget { budget: usize, during: &'static str },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("redefinition of {0}")]
    Redefinition(String),

    #[error("unknown track {0}")]
    UnknownTrack(usize),

    #[error("gcd of generators is {0}, Frobenius number undefined")]
    GcdNotOne(u64),

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
