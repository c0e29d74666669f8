use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus(Vec<u32>),
    #[error("field of order {p}^{e} exceeds the cap of {cap} elements")]
    FieldTooLarge { p: u64, e: u32, cap: u64 },
    #[error("{q} is not a power of the characteristic {p}")]
    CharacteristicMismatch { q: u64, p: u64 },
    #[error("no embedding of GF({src}) into GF({dst})")]
    NoEmbedding { src: u64, dst: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation is undefined for the zero form")]
    ZeroForm,
    #[error("operation requires a nonsingular form")]
    SingularForm,
    #[error("operation requires a nonzero vector")]
    ZeroVector,
    #[error("enumeration budget of {budget} visits exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("inexact division in {0}")]
    ExactDivisionFailure(String),
    #[error("purity violation: {0}")]
    PurityViolation(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
