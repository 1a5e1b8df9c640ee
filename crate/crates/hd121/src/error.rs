//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The document does not match the network JSON schema.
    #[error("network document does not match the expected schema: {0}")]
    Schema(String),

    #[error("link {from}->{to}: node index out of range (nodes are 0..={max_node})")]
    NodeOutOfRange { from: usize, to: usize, max_node: usize },

    #[error("link {from}->{to} enters the source: node 0 never receives")]
    LinkIntoSource { from: usize, to: usize },

    #[error("link {from}->{to} leaves the destination: node {from} never transmits")]
    LinkOutOfDestination { from: usize, to: usize },

    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },

    #[error("duplicate link {from}->{to}")]
    DuplicateLink { from: usize, to: usize },

    #[error("link {from}->{to} has invalid capacity {capacity} (must be finite and >= 0)")]
    InvalidLinkCapacity { from: usize, to: usize, capacity: f64 },

    #[error("link {from}->{to} has negative transmit power {power}")]
    NegativePower { from: usize, to: usize, power: f64 },

    #[error("transmit power {power} is negative")]
    InvalidPower { power: f64 },

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("duplicate edge ({u},{v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge ({u},{v}) has invalid capacity {capacity} (must be finite and >= 0)")]
    InvalidEdgeCapacity { u: usize, v: usize, capacity: f64 },

    #[error("operation requires two distinct vertices, got {vertex} twice")]
    IdenticalEndpoints { vertex: usize },

    #[error("graph has {vertex_count} vertices; at least {required} are required")]
    GraphTooSmall { vertex_count: usize, required: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree bound violated at node {node}: incident activation sum {value} exceeds 1")]
    DegreeBoundExceeded { node: usize, value: f64 },

    #[error("solver iteration limit reached after {iterations} iterations: {context}")]
    IterationLimit { iterations: usize, context: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("separation oracle returned an already generated odd-set cut {vertices:?}")]
    RepeatedCut { vertices: Vec<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("schedule activates nonexistent link {from}->{to}")]
    ScheduleInvalidLink { from: usize, to: usize },

    #[error("schedule verification failed: {0}")]
    Verification(String),

    #[error("instance too large for the reference oracle: {what} is {actual}, guard is {limit}")]
    GuardExceeded { what: String, limit: usize, actual: usize },
}

impl Error {
    /// True for errors caused by malformed or invalid input documents.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema(_)
                | Error::NodeOutOfRange { .. }
                | Error::LinkIntoSource { .. }
                | Error::LinkOutOfDestination { .. }
                | Error::SelfLoop { .. }
                | Error::DuplicateLink { .. }
                | Error::InvalidLinkCapacity { .. }
                | Error::NegativePower { .. }
                | Error::InvalidPower { .. }
        )
    }
}
