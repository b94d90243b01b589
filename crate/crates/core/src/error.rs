use thiserror::Error;

use crate::Vertex;

/// Errors produced by graph construction, verification and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex map is not injective: {0} and {1} share an image")]
    NotInjective(Vertex, Vertex),

    #[error("vertex map does not carry edge {0}-{1} to a host edge")]
    NotEdgePreserving(Vertex, Vertex),

    #[error("labeling is not injective: vertices {0} and {1} share a label")]
    LabelingNotInjective(Vertex, Vertex),

    #[error("labeling mismatch: {0}")]
    LabelingMismatch(String),

    #[error("vertex {0} does not have degree 2")]
    NotDegreeTwo(Vertex),

    #[error("vertices {0:?} are not pairwise distinct")]
    NotDistinct(Vec<Vertex>),

    #[error("forced set is not in general position: {0:?} lie on a common geodesic")]
    ForcedNotInGeneralPosition([Vertex; 3]),

    #[error("input is empty")]
    EmptyInput,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("coordinate {0:?} outside patch")]
    CoordinateOutsidePatch(Vec<i64>),

    #[error("unknown witness {0:?}")]
    UnknownWitness(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
