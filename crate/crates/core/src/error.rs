use thiserror::Error;

/// Errors produced by the library. The CLI maps these onto its exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field size {0} is not a prime in 2..=251")]
    NotPrime(u32),

    #[error("entry {value} at ({row}, {col}) is not an element of GF({q})")]
    EntryOutOfField {
        row: usize,
        col: usize,
        value: u32,
        q: u8,
    },

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u8, u8),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for a universe of size {universe}")]
    IndexOutOfRange { index: usize, universe: usize },

    #[error("index set must be strictly increasing")]
    UnsortedIndexSet,

    #[error("scaling factor must be a nonzero field element")]
    ZeroScale,

    #[error("row {0} cannot be deleted: {1}")]
    RowNotDeletable(usize, &'static str),

    #[error("enumeration needs {needed} steps but the budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("error pattern has {got} positions, expected {expected}")]
    PatternSize { got: usize, expected: usize },

    #[error("rank table is not total: subset {0:#b} has no rank")]
    TableNotTotal(u64),

    #[error("ground set of size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("contraction sets overlap")]
    OverlappingSets,

    #[error("condition ({condition}) violated: {detail}")]
    ConditionViolated { condition: char, detail: String },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
