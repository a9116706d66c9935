use thiserror::Error;

/// Errors surfaced by graph construction, solver preconditions and guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph must have at least {0} vertices")]
    TooFewVertices(usize),
    #[error("vertex sets must partition the vertex set (vertex {0} is {1})")]
    BadPartition(usize, &'static str),
    #[error("label set {got} is not a subset of the current labels {have}")]
    NotNarrowing { got: String, have: String },
    #[error("variable {0} does not have exactly two values")]
    NotTwoValued(usize),
    #[error("variable {0} has a three-valued domain; 2-SAT base case requires at most two")]
    DomainTooLarge(usize),
    #[error("minimum degree {delta} violates precondition {requirement}")]
    DegreeTooSmall { delta: usize, requirement: String },
    #[error("instance exceeds brute-force guard ({0})")]
    GuardExceeded(String),
    #[error("infeasible generator profile: {0}")]
    InfeasibleProfile(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
