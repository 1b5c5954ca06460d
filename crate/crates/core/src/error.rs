use thiserror::Error;

use crate::hypergraph::MAX_VERTICES;

/// Input validation failures shared by every module.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("n = {0} exceeds the supported maximum of {MAX_VERTICES} vertices")]
    TooManyVertices(usize),

    #[error("operation needs at least {needed} vertices, hypergraph has {n}")]
    TooFewVertices { needed: usize, n: usize },

    #[error("({0}, {0}) is not a pair of distinct vertices")]
    DegeneratePair(usize),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("parts must be pairwise disjoint and non-empty")]
    BadParts,

    #[error("vertex sets live on different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed binary hypergraph: {0}")]
    Binary(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: impl ToString, range: &'static str) -> Error {
    Error::OutOfRange {
        name,
        value: value.to_string(),
        range,
    }
}
