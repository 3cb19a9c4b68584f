use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("malformed graph spec at `{token}`: {reason}")]
    Spec { token: String, reason: String },
    #[error("{0} vertices exceeds the cap of {1}")]
    TooManyVertices(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(&'static str),
    #[error("pattern must be connected with at least one edge")]
    BadPattern,
    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PercolationError {
    #[error("host has {0} vertices; embedding search supports at most {1}")]
    HostTooLarge(usize, usize),
    #[error("host has {host} vertices but the pattern needs {pattern}")]
    HostTooSmall { host: usize, pattern: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("no weakly saturated graph with at most {cap} edges on {n} vertices; w-sat >= {certified_lower}")]
    CapReached {
        n: usize,
        cap: usize,
        certified_lower: usize,
    },
    #[error("host size {n} is below the pattern size {pattern}")]
    HostTooSmall { n: usize, pattern: usize },
    #[error("edge cap {0} exceeds the core enumeration limit {1}")]
    EdgeCapTooLarge(usize, usize),
    #[error(transparent)]
    Percolation(#[from] PercolationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("pattern has no pendant edge (minimum degree {0})")]
    NoPendantEdge(usize),
    #[error("vertex {vertex} has degree {degree} inside H, below the required {required}")]
    DegreeTooSmall {
        vertex: usize,
        degree: usize,
        required: usize,
    },
    #[error("H must have {expected} vertices, got {got}")]
    WrongHostSubsetSize { expected: usize, got: usize },
    #[error("no witness copy exists for edge {0}-{1}")]
    NoWitness(usize, usize),
    #[error("pattern has no end-star")]
    NoEndStar,
    #[error("vertex {0} is pendant")]
    PendantVertex(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("pattern is a star")]
    Star,
    #[error("degenerate caterpillar: spine vertex {0} has no leaves")]
    DegenerateCaterpillar(usize),
    #[error("n = {n} is below the required threshold {threshold}")]
    BelowThreshold { n: usize, threshold: usize },
    #[error("no supported local structure found")]
    NoStructure,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Percolation(#[from] PercolationError),
}

/// First failure found while replaying a certificate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("pattern is not a connected graph with an edge")]
    Pattern,
    #[error("initial edge {index} ({u}, {v}): {reason}")]
    Initial {
        index: usize,
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("step {index}: {reason}")]
    Step { index: usize, reason: String },
    #[error("final graph is not complete: {missing} non-edges remain")]
    Incomplete { missing: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReproduceError {
    #[error("unknown claim `{0}`; known claims: {1}")]
    UnknownClaim(String, String),
    #[error("unknown parameter `{0}` for this claim")]
    UnknownParam(String),
    #[error("parameter {key} = `{value}`: {reason}")]
    BadParam { key: String, value: String, reason: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Percolation(#[from] PercolationError),
}
