use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph spec: {0}")]
    InvalidSpec(String),

    #[error("random generation failed after {attempts} attempts: {reason}")]
    GenerationFailure { attempts: usize, reason: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected ({reached} of {n} vertices reachable from vertex 0)")]
    DisconnectedGraph { reached: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("step budget of {cap} exceeded before reaching the threshold")]
    BudgetExceeded { cap: u64 },

    #[error("eigen solver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("linear solver failed: {0}")]
    SolverFailure(String),

    #[error("state space too large: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid walk ids: {0}")]
    InvalidIds(String),

    #[error("all {trials} trials were censored at cap {cap}")]
    AllCensored { trials: usize, cap: u64 },

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("missing measured quantity: {0}")]
    MissingQuantity(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
