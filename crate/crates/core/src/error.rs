use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p must be ≥ 1 (got {0})")]
    InvalidNorm(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("no points")]
    NoPoints,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("network is disconnected")]
    Disconnected,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("instance too large for exact solver: {0}")]
    TooLarge(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("terminals do not match instance: {0}")]
    TerminalMismatch(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
