use thiserror::Error;

/// Errors produced by the library. Every fallible operation returns this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is out of range (expected 3 <= N <= {max})", max = crate::modular::MAX_MODULUS)]
    InvalidModulus(u32),

    #[error("{value} is not a valid index modulo {n}")]
    OutOfRange { value: i64, n: u32 },

    #[error("moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("onset {0} appears more than once")]
    DuplicateOnset(i64),

    #[error("cyclic gaps sum to {sum}, expected {n}")]
    WrapSumViolation { sum: u64, n: u32 },

    #[error("onsets are not strictly increasing")]
    NotIncreasing,

    #[error("the jumping number of the empty rhythm is undefined")]
    EmptyRhythm,

    #[error("operation needs at least {needed} onsets, got {found}")]
    TooFewOnsets { needed: usize, found: usize },

    #[error("index conventions differ")]
    ConventionMismatch,

    #[error("bit vectors are limited to N <= 64, got {0}")]
    TooWide(u32),

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("N = {n} exceeds the exhaustive bound {bound}")]
    BoundExceeded { n: u32, bound: u32 },

    #[error("({a},{b}) is not a parental pair of zero modulo {n}")]
    NotParental { a: i64, b: i64, n: u32 },

    #[error("the pair (0,0) has no interval polynomial; use the singleton polynomial")]
    ZeroPair,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
