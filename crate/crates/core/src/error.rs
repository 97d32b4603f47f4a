use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("parent links do not form a tree rooted at voter {root}: {reason}")]
    NotATree { root: usize, reason: String },

    #[error("committee size k = {k} is outside [1, {max}]")]
    InvalidK { k: usize, max: usize },

    #[error("invalid voter count n = {0}")]
    InvalidN(usize),

    #[error("misrepresentation values are not integral; the k-link solver needs integers (use line-dp instead)")]
    NonIntegerRho,

    #[error("segment ({i}, {j}) is out of range for {n} voters")]
    SegmentOutOfRange { i: usize, j: usize, n: usize },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("rejection sampling gave up after {attempts} attempts")]
    RejectionBudgetExceeded { attempts: u64 },

    #[error("algorithm `{algorithm}` does not support {what}")]
    AlgorithmStructureMismatch { algorithm: String, what: String },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}
