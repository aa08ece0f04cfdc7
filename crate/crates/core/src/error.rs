use thiserror::Error;

/// Errors raised by the field, code and rule machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),
    #[error("GF({p}^{m}) exceeds the 2^16 element table limit")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus is not a primitive polynomial over GF({0})")]
    NotPrimitive(u32),
    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{m})")]
    NotSubfield { p: u32, sub: u32, m: u32 },
    #[error("GF({0}) is not a quadratic extension of a subfield")]
    NotQuadratic(u32),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(n={n}, q={q}) != 1")]
    NotCoprime { n: usize, q: u32 },
    #[error("multiplier {a} is not a unit modulo {n}")]
    NotUnit { a: i64, n: usize },
    #[error("residue set is not closed under multiplication by {q} mod {n}")]
    NotCosetClosed { n: usize, q: u32 },
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("splitting field GF({q}^{degree}) exceeds the supported size")]
    SplittingFieldTooLarge { q: u32, degree: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
