use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum QzError {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("term budget exhausted after {terms} terms (tail bound still {tail_bound})")]
    MaxTermsExhausted { terms: u64, tail_bound: String },

    #[error("division by a series with zero constant term")]
    SeriesDivisionByZero,

    #[error("series truncation orders differ: {lhs} vs {rhs}")]
    OrderMismatch { lhs: usize, rhs: usize },

    #[error("kernel ratio denominator vanishes at lattice point (n={n}, k={k})")]
    KernelPole { n: u64, k: u64 },

    #[error("telescoping system is inconsistent at n={n}: no mate with the requested degrees")]
    InconsistentSystem { n: u64 },

    #[error("telescoping system at n={n} is rank-deficient with {dof} free parameters")]
    RankDeficient { n: u64, dof: usize },

    #[error("coefficient table covers n <= {available}, but n={requested} was requested")]
    TableExceeded { available: u64, requested: u64 },

    #[error("boundary term does not vanish: {side} boundary sum {value} exceeds budget {budget}")]
    BoundaryNotVanishing {
        side: &'static str,
        value: String,
        budget: String,
    },

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("cannot parse rational from {0:?}: expected \"p\" or \"p/r\"")]
    ParseRational(String),
}
