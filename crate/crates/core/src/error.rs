use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("no prime p = 1 (mod {n}) in [{lower_bound}, {ceiling}]")]
    PrimeSearchExhausted {
        n: u64,
        lower_bound: u64,
        ceiling: u64,
    },

    #[error("{n} does not divide p - 1 = {}", .p - 1)]
    NoRootOfUnity { p: u64, n: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("representation index {index} out of range 1 <= i < {n}/2")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("theta_{index} is not in Omega for n = {n}")]
    NotInOmega { index: usize, n: usize },

    #[error("{what}: size {size} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
