use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input {input} out of range for n={n} (expected < 2^n)")]
    InputOutOfRange { input: u64, n: usize },

    #[error("n={n} exceeds the supported maximum of {max}{hint}")]
    Capacity {
        n: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    Invalid(String),

    #[error("distribution constraint violated: {0}")]
    Distribution(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
