use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e}, allowed {allowed:e})")]
    NotHermitian { deviation: f64, allowed: f64 },
    #[error("non-finite entry in {0}")]
    NotFinite(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("dimension must be odd and positive, got {0}")]
    EvenDimension(usize),
    #[error("scale constraint violated: alpha*beta = {product}, expected 2*pi/N = {expected}")]
    ScaleConstraint { product: f64, expected: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty range: no integers strictly between {lo} and {hi}")]
    EmptyRange { lo: u128, hi: u128 },
    #[error("cannot apply {requested} swaps, at most {max} are available")]
    TooManySwaps { requested: usize, max: usize },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("state has no support on the projected subspace")]
    ZeroProjection,
    #[error("malformed partition record: {0}")]
    PartitionRecord(String),
}
