use thiserror::Error;

use crate::graph::Triangle;

/// Errors produced by the graph algorithms and generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    #[error("no color given for pair ({0}, {1})")]
    MissingPair(usize, usize),
    #[error("pair ({u}, {v}) given conflicting colors {first} and {second}")]
    AsymmetricPair {
        u: usize,
        v: usize,
        first: u64,
        second: u64,
    },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} appears more than once")]
    RepeatedVertex(usize),
    #[error("monochromatic triangle {0}")]
    MonochromaticTriangle(Triangle),
    #[error("edge set is not a forest: {0}")]
    NotAForest(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A constructive step could not be completed. `step` names the
    /// branch of the construction that ran out of room or options.
    #[error("construction failed at {step}: {detail}")]
    Construction { step: String, detail: String },
    #[error("search limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    pub(crate) fn construction(step: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Construction {
            step: step.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(detail: impl Into<String>) -> Self {
        Error::Precondition(detail.into())
    }

    /// Name of the failed construction step, if this is a construction failure.
    pub fn step(&self) -> Option<&str> {
        match self {
            Error::Construction { step, .. } => Some(step),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
