use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime, got {0}")]
    NotPrime(u64),
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },
    #[error("kernel offset j = {j} out of range for i = {i} (need 0 <= j < p^i)")]
    KernelOffset { i: u32, j: u64 },
    #[error("brute-force enumeration of S_{n} refused (n must be <= {max})")]
    BruteForceBound { n: usize, max: usize },
    #[error("enumeration of {what} refused: {size} exceeds the limit {limit}")]
    SizeGuard {
        what: String,
        size: String,
        limit: u64,
    },
    #[error("cannot truncate an empty tableau")]
    EmptyTableau,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("tableau is not a member of T_{n}")]
    NotMember { n: usize },
    #[error("scaling factors must be strictly positive")]
    NonPositiveScaling,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
