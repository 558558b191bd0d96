use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: String, vertex: String },
    #[error("edges {first} and {second} are parallel")]
    ParallelEdge { first: String, second: String },
    #[error("edge {edge} references vertex index {vertex} out of range")]
    VertexOutOfRange { edge: String, vertex: usize },
    #[error("duplicate {kind} label {label:?}")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("signature has {got} entries, graph has {expected} edges")]
    SignatureLength { expected: usize, got: usize },
    #[error("rotation at vertex {vertex} is inconsistent with its incidence: {reason}")]
    Rotation { vertex: String, reason: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("boundary edge {0} is twisted; the boundary must carry positive signs")]
    TwistedBoundary(String),
    #[error("vertex set is not independent: edge {0} joins two of its vertices")]
    NotIndependent(String),
    #[error("sample space has {size} rotation systems, above the cap {cap}; use sampling")]
    CapExceeded { size: String, cap: u64 },
    #[error("{0} vertices exceed the switch search cap {1}")]
    SwitchCap(usize, usize),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid amalgamation: {0}")]
    Amalgamation(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
