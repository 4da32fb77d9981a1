use thiserror::Error;

/// Errors raised by the library. Every variant is a precondition failure or a
/// resource refusal; mathematical "no" answers are returned as data instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    NotIrreducible(Vec<u32>),
    #[error("field size {q} exceeds the configured cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("element index {index} is out of range for a field of size {q}")]
    BadElement { index: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide q - 1 = {order}")]
    NotADivisor { d: u64, order: u64 },
    #[error("exponent m = {m} is outside [2, {max}]")]
    BadExponent { m: u32, max: u32 },
    #[error("element {0} is not a root of unity of the required order")]
    NotRootOfUnity(u32),
    #[error("polynomial does not lie in V[x] (nonzero constant term or degree above q - 2)")]
    NotInV,
    #[error("matrix entries must lie in the prime subfield")]
    NotPrimeSubfield,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("shift parameter must be nonzero")]
    ZeroShift,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("field of size {q} is above the Hermite test cap {cap}")]
    TooLargeField { q: u32, cap: u32 },
    #[error("polynomial is not a permutation of the field")]
    NotAPermutation,
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("degenerate family parameters: {0}")]
    DegenerateParameters(&'static str),
    #[error("parameters do not satisfy both family conditions")]
    NotConstructible,
    #[error("operation requires a field of extension degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("could not parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
