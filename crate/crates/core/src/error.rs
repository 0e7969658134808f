use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoopRejected(usize),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    BadVertex { vertex: usize, vertex_count: usize },
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("invalid layer widths: {0}")]
    BadWidths(String),
    #[error("weights must be given for exactly the arcs of the digraph: {0}")]
    BadWeights(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected q, gf2, gf3, gf<p>)")]
    UnknownField(String),
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldError(String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input too large for the brute-force oracle: {0}")]
    TooLargeForOracle(String),
    #[error("unknown homology engine `{0}`")]
    UnknownEngine(String),
}
