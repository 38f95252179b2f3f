//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by field construction, polynomial arithmetic and the
/// counting/solving routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over F_{0}")]
    NotIrreducible(u64),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("operands belong to different field specs")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial has zero constant coefficient")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("the factor x is excluded here")]
    FactorIsX,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("enumeration of {required} polynomials exceeds the work budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("index {j} out of range for degree {n}")]
    BadRange { n: u32, j: u32 },
    #[error("order m = {m} is too small (need m >= {min})")]
    OrderTooSmall { m: usize, min: usize },
    #[error("element code {code} out of range for a field of {q} elements")]
    CodeOutOfRange { code: u64, q: u64 },
    #[error("field too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
