use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("virtual representation is not honest: {character} has multiplicity {multiplicity}")]
    NegativeMultiplicity { character: String, multiplicity: i64 },

    #[error("tangent space at fixpoint {label} contains the trivial character")]
    TrivialCharacterPresent { label: String },

    #[error("zero tangent weight at fixpoint {label}; choose another weight vector")]
    ZeroTangentWeight { label: String },

    #[error("tangent dimension {found} at fixpoint {label}, expected {expected}")]
    TangentDimensionMismatch {
        label: String,
        expected: usize,
        found: i64,
    },

    #[error("weight vector has {found} entries, expected {expected}")]
    WeightLength { expected: usize, found: usize },

    #[error("fixpoint {label}: degree {degree} sections have dimension {found}, expected {expected}")]
    RankMismatch {
        label: String,
        degree: u32,
        expected: usize,
        found: usize,
    },

    #[error("incidence class gamma_{0} is not available (only degrees 0..=4)")]
    UnsupportedGammaDegree(u32),

    #[error("integral is not an integer: {value}")]
    NonIntegralResult { value: String },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("r = {r}, n = {n} is outside the validity range n >= r - 1")]
    OutOfValidityRange { r: u32, n: i64 },

    #[error("no valid weight vector found after {attempts} attempts")]
    RetryBudgetExhausted { attempts: u32 },
}
