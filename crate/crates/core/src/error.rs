use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("graph6 output is limited to 62 vertices, graph has {0}")]
    Graph6Unsupported(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid vertex map: {0}")]
    InvalidMap(String),

    #[error("quotient block {0:?} contains an edge")]
    LoopDetected(Vec<usize>),

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("map is not a homomorphism")]
    NotHomomorphism,

    #[error("base graph is not connected")]
    Disconnected,

    #[error("base vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("base vertex {vertex} has degree {degree}, gadget limit is {limit}")]
    DegreeTooHigh {
        vertex: usize,
        degree: usize,
        limit: usize,
    },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("homomorphism basis check failed: {0}")]
    BasisMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("unknown graph name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
