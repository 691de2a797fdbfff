use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(String),
    #[error("permutations of different rank: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("{v} is not below {w} in Bruhat order")]
    NotBruhatLeq { v: String, w: String },
    #[error("transposition ({a} {b}) out of range for S_{n}")]
    TranspositionOutOfRange { a: usize, b: usize, n: usize },
    #[error("digraph contains a cycle through {0}")]
    CycleDetected(usize),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("height vector is not generic: edge {0:?} -- {1:?} has equal height")]
    NonGeneric(Vec<i64>, Vec<i64>),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("input polytope not smooth or malformed f-vector: {0}")]
    NotSmooth(String),
    #[error("invalid height vector: {0}")]
    InvalidHeight(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("empty point set")]
    Empty,
    #[error("retraction search exceeded {0} memoized states")]
    SearchCap(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that signal a mathematical hypothesis failing on the
    /// given input rather than a usage mistake.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::HypothesisViolated(_) | Error::NonGeneric(..) | Error::NotSmooth(_)
        )
    }
}
