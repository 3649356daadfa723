use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid rule set: {0}")]
    RuleSet(String),
    #[error("term is not closed: {0}")]
    OpenTerm(String),
    #[error("parallel composition not allowed here: {0}")]
    ParNotAllowed(String),
    #[error("state space exceeds the cap of {cap} states")]
    StateCap { cap: usize },
    #[error("depth {depth} exceeds the enumerator bound {bound}")]
    DepthBound { depth: usize, bound: usize },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("invalid proof: {0}")]
    Proof(String),
}

pub type Result<T> = std::result::Result<T, Error>;
