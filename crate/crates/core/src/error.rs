use thiserror::Error;

use crate::graph::{EdgeKey, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("neighbor index {index} out of range for vertex {vertex} of degree {degree}")]
    NeighborIndexOutOfRange {
        vertex: VertexId,
        index: usize,
        degree: usize,
    },

    #[error("probe budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("{0} is not an edge of the graph")]
    NotAnEdge(EdgeKey),

    #[error("input is not a forest (cycle found while exploring from {0})")]
    NotAForest(VertexId),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible adversarial parameters: {0}")]
    Infeasible(String),

    #[error("peeling stalled in round {round} with {remaining} vertices left; declared arboricity {alpha} is too small")]
    PeelingStalled {
        round: usize,
        remaining: usize,
        alpha: u32,
    },

    #[error("input too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("improper coloring: both endpoints of {0} received the same color")]
    ImproperColoring(EdgeKey),

    #[error("orientation does not cover the edge set: {0}")]
    Coverage(String),

    #[error("query {edge} failed: {source}")]
    Query {
        edge: EdgeKey,
        #[source]
        source: Box<Error>,
    },

    #[error("query at vertex {vertex} failed: {source}")]
    VertexQuery {
        vertex: VertexId,
        #[source]
        source: Box<Error>,
    },

    #[error("vertex {vertex} has degree {degree}, above the declared maximum {declared}")]
    DegreeExceeded {
        vertex: VertexId,
        degree: usize,
        declared: u32,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Strips [`Error::Query`] wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Query { source, .. } | Error::VertexQuery { source, .. } => source.root_cause(),
            e => e,
        }
    }

    /// Failures of a global precondition of the input, as opposed to caller misuse.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self.root_cause(),
            Error::NotAForest(_)
                | Error::Infeasible(_)
                | Error::PeelingStalled { .. }
                | Error::TooLarge(_)
                | Error::DegreeExceeded { .. }
        )
    }

    /// Failures where an algorithm's output broke its guarantee.
    pub fn is_guarantee_violation(&self) -> bool {
        matches!(
            self.root_cause(),
            Error::ImproperColoring(_) | Error::Coverage(_)
        )
    }
}
