use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the library. Every fallible operation returns one of
/// these; nothing is silently truncated or projected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sparsity k = {k} outside the admissible range [{min}, {max}]")]
    BadK { k: usize, min: usize, max: usize },
    #[error("{what} budget exceeded: {count} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        limit: u128,
    },
    #[error("target is not in the lattice generated by the columns")]
    NotInLattice,
    #[error("columns do not positively span the whole space")]
    NotSpanning,
    #[error("instance is not simplicial with respect to the chosen basis")]
    NotSimplicial,
    #[error("no non-negative witness found for the target")]
    NoWitness,
    #[error("internal pigeonhole violation: {0}")]
    InternalPigeonholeViolation(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("tau search failed after {0} doublings")]
    TauSearchFailed(u32),
    #[error("parameter l = {0} must be at least 3")]
    BadL(u32),
    #[error("could not sample a full-rank instance after {0} attempts")]
    RankRetryExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
