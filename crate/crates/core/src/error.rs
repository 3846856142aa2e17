use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no p-adic unit part")]
    ZeroInput,
    #[error("value is not {p}-integral")]
    NotPIntegral { p: u64 },
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: String, m: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    /// A denominator shares the factor `gcd` with the modulus.
    #[error("denominator is not coprime to the modulus (common factor {gcd})")]
    NotCoprime { gcd: String },
    #[error("cyclotomic index {0} appears more than once in the modulus")]
    DuplicateIndex(u64),
    #[error("series did not terminate within {bound} terms")]
    NonTerminating { bound: usize },
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
