use thiserror::Error;

/// Errors produced by the measure library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `p(x) > 0` where `q(x) = 0`: the divergence is infinite, so the measure
    /// built on it is undefined.
    #[error("absolute continuity violated at state {state}: p > 0 where q = 0")]
    AbsoluteContinuityViolation { state: usize },

    /// The conditioning output state has zero probability.
    #[error("output state {state} is unreachable")]
    UnreachableState { state: String },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid state space: {0}")]
    InvalidStateSpace(String),

    #[error("state spaces do not match: {0}")]
    SpaceMismatch(String),

    #[error("empty node set")]
    EmptyNodeSet,

    #[error("node {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("state {state} out of range for {total} states")]
    StateOutOfRange { state: usize, total: usize },

    #[error("need at least {min} nodes, got {got}")]
    TooFewNodes { min: usize, got: usize },

    #[error("{max} node cap exceeded ({got} nodes); set IRRLAB_MAX_NODES to raise it")]
    TooManyNodes { max: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no partition has a positive normalizer")]
    DegenerateNormalizer,

    #[error("{0} is not implemented")]
    NotImplemented(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
