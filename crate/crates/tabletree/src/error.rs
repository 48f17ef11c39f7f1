//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: no header row")]
    EmptyInput,

    #[error("empty table: header only, no data rows")]
    NoRows,

    #[error("duplicate header name `{0}`")]
    DuplicateHeader(String),

    #[error("row at line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("csv parse error: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("unknown column id {0}")]
    UnknownColumn(usize),

    #[error("unknown column name `{0}`")]
    UnknownColumnName(String),

    #[error("column set must not be empty")]
    EmptyColumnSet,

    #[error("permutation must not be empty")]
    EmptyPermutation,

    #[error("sequence is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("invalid search config: {0}")]
    InvalidConfig(String),

    #[error("candidate columns overlap the target set")]
    CandidatesOverlapTarget,

    #[error("seed columns must be a subset of the candidates")]
    SeedOutsideCandidates,

    #[error(
        "ratio-measure search requires candidates to be exact descendants \
         of the target; column {0} is not"
    )]
    NonDescendantCandidate(usize),

    #[error("brute-force oracle is limited to {max} columns, table has {n}")]
    OracleTooWide { max: usize, n: usize },

    #[error("infeasible planted construction: {0}")]
    InfeasiblePlant(String),

    #[error("anchor column `{0}` is not part of the schema tree")]
    AnchorNotInTree(String),

    #[error("feature plan does not match table: {0}")]
    PlanMismatch(String),

    #[error("functional dependency violated during materialization: {0}")]
    DependencyViolated(String),
}
