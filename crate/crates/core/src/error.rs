use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: Vertex, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("no edge between {0} and {1}")]
    MissingEdge(Vertex, Vertex),
    #[error("edge id {0} out of range")]
    InvalidEdge(EdgeId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {0} is crossed more than once")]
    MultiplyCrossed(EdgeId),
    #[error("crossing edges {0} and {1} share an endpoint")]
    AdjacentCrossing(EdgeId, EdgeId),
    #[error("invalid rotation system: {0}")]
    Rotation(String),
    #[error("rotation system is not planar: V - E + F = {euler} on a component (expected 2)")]
    NonPlanar { euler: i64 },
    #[error("vertex {0} is a crossing vertex")]
    CrossingVertex(Vertex),

    #[error("color {color} outside palette 1..={kappa}")]
    ColorOutOfRange { color: usize, kappa: usize },
    #[error("palette size must be positive")]
    EmptyPalette,
    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),
    #[error("edge {0} is uncolored")]
    Uncolored(EdgeId),
    #[error("coloring is not proper and acyclic")]
    NotAcyclic,
    #[error("coloring does not match G - uv: {0}")]
    NotDeletionColoring(String),
    #[error("edges {0} and {1} do not share a vertex")]
    NotIncident(EdgeId, EdgeId),
    #[error("palette of {kappa} colors is below the maximum degree {max_degree}")]
    PaletteTooSmall { kappa: usize, max_degree: usize },

    #[error("no acyclic coloring found within budget after {attempts} attempts ({moves} repair moves)")]
    SolveFailed { attempts: usize, moves: usize },
    #[error("instance too large for exhaustive search ({edges} edges, limit {limit})")]
    TooLarge { edges: usize, limit: usize },
    #[error("graph contains the triangle {0:?}")]
    HasTriangle([Vertex; 3]),
    #[error("condition {0} needs a drawing")]
    DrawingRequired(&'static str),
    #[error("ledgers cover different element sets")]
    LedgerMismatch,
    #[error("generator gave up after {0} attempts")]
    GeneratorExhausted(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
