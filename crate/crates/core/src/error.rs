use thiserror::Error;

/// Errors surfaced by field, polynomial and solver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{s} does not divide {m}")]
    NotADivisor { s: usize, m: usize },
    #[error("invalid subfield tower d={d}, n={n} inside GF(p^{m})")]
    InvalidTower { d: usize, n: usize, m: usize },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("polynomial has zero constant term; preprocess the shift first")]
    ZeroConstantTerm,
    #[error("order computation too large ({detail}); supply k explicitly")]
    OrderTooLarge { detail: String },
    #[error("symbolic division by the zero linearized polynomial")]
    ZeroDivisor,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("k = {k} is invalid: l does not divide x^k - 1")]
    InvalidK { k: u64 },
    #[error("equation has no solution in GF(p^n)")]
    NotSolvable,
    #[error("element does not lie in GF(p^{n})")]
    NotInSubfield { n: usize },
    #[error("closed form not applicable: p = {p} divides k/d = {ratio}")]
    NotApplicable { p: u32, ratio: u64 },
    #[error("too many solutions to enumerate: {count} exceeds cap {cap}")]
    TooMany { count: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
