use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("order bound {0} exceeded")]
    OrderBound(usize),
    #[error("letter images do not generate the group (reached {reached} of {expected} elements)")]
    NonGenerating { reached: usize, expected: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size bound exceeded: {0}")]
    Bound(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
