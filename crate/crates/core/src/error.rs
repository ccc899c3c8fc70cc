use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("generator {index} is not an automorphism of the graph")]
    NotAnAutomorphism { index: usize },

    #[error("action is not half-arc-transitive: {0}")]
    NotHalfArcTransitive(String),

    #[error("orientation is not 2-in/2-out at vertex {0}")]
    UnbalancedOrientation(usize),

    #[error("alternating structure is inconsistent: {0}")]
    InconsistentAlternation(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("voltage assignment is not T-reduced on tree arc ({0}, {1})")]
    NotTReduced(usize, usize),

    #[error("group element {0:?} does not belong to the voltage group")]
    BadElement(Vec<usize>),

    #[error("group too large to enumerate ({0} elements)")]
    GroupTooLarge(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
