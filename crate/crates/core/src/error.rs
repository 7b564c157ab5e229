use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    EdgeSize { edge: usize, found: usize, expected: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: i64 },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("edge {edge}: vertex label {label} outside 1..={n}")]
    VertexOutOfRange { edge: usize, label: i64, n: usize },
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("hypergraph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("uniformity {0} is odd; bipartitions need even uniformity")]
    OddUniformity(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("pinning the first coordinate requires every row to sum to 0 mod {0}")]
    PinnedRowSums(u64),
    #[error("enumeration cap must be at least 1")]
    ZeroCap,
    #[error("the zero vector is not an admissible eigenvector")]
    ZeroVector,
    #[error("gauge entry {index} has modulus {modulus}, expected 1")]
    NonUnitGauge { index: usize, modulus: f64 },
    #[error("brute force needs {candidates} candidates, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("invalid exponent vector: {0}")]
    InvalidExponent(String),
    #[error("invariant violated: {0}")]
    InvariantBreach(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
