use thiserror::Error;

/// Errors raised by ring geometry, the movement rules and the simulator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring size {n} is too small (need at least {min})")]
    RingTooSmall { n: usize, min: usize },

    #[error("ring size {n} must be {expected}")]
    WrongParity { n: usize, expected: &'static str },

    #[error("node {node} is outside a ring of {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("node {0} is not occupied")]
    NotOccupied(usize),

    #[error("malformed configuration literal `{0}`")]
    MalformedLiteral(String),

    #[error("configuration has no occupied node")]
    EmptyConfiguration,

    #[error("configuration {0} is not node-edge symmetric about the given axis")]
    NotSymmetric(String),

    #[error("all robots of {0} are on the target node")]
    AllOnTarget(String),

    #[error("{what}: {reason}")]
    Precondition { what: &'static str, reason: String },

    #[error("move order for node {0}, which is empty")]
    OrderOnEmptyNode(usize),

    #[error("illegal initial state: {0}")]
    IllegalStart(String),
}

pub type Result<T> = std::result::Result<T, Error>;
