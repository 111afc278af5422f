use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact division left a nonzero remainder coefficient.
    #[error("polynomial division is not exact")]
    NotDivisible,
    /// Power-series inversion needs a unit constant term.
    #[error("constant coefficient {0} is not a unit")]
    NotInvertible(String),
    #[error("inadmissible index {n}: {reason}")]
    NotAdmissible { n: u64, reason: String },
    #[error("n = {n} has {divisors} divisors; 2^{divisors} subsets exceed the limit {limit}")]
    TooManyDivisors { n: u64, divisors: usize, limit: u64 },
    #[error("invalid index {0}: must be at least 1")]
    InvalidIndex(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
