use thiserror::Error;

/// Errors raised while constructing or parsing a [`Graph`](crate::Graph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

/// Raised when an enumeration would exceed its configured memory budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("capacity exceeded: {needed} items over budget {budget}")]
pub struct CapacityExceeded {
    pub needed: usize,
    pub budget: usize,
}
