//! Shared error type for all kernel operations.

use std::fmt;

/// Errors surfaced by exact-arithmetic and geometric operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The modulus is not an odd prime in the supported range.
    NotAnOddPrime(u64),
    /// Inversion of zero in the prime field.
    DivisionByZero,
    /// Operands belong to different polynomial rings.
    RingMismatch,
    /// Operands belong to different Lie algebras.
    AlgebraMismatch,
    /// A negative exponent was placed on a variable without Laurent localization.
    NegativeExponent { var: String },
    /// Exponent arithmetic left the 64-bit range.
    ExponentOverflow,
    /// The polynomial is not a p-th power (some exponent not divisible by p).
    NotInFrobeniusSubring,
    /// A form of the wrong degree was supplied.
    DegreeError { expected: usize, got: usize },
    /// The differential form is not closed.
    NotClosed,
    /// Internal consistency failure inside the Cartier operator. Closedness
    /// guarantees the Frobenius-subring membership this reports, so seeing
    /// it means a kernel bug.
    InternalCartierError(String),
    /// Structure constants fail antisymmetry, Jacobi or the restricted axioms.
    InvalidStructureConstants(String),
    /// Truncation target level exceeds the item's level.
    LevelError { requested: u32, max: u32 },
    /// An enumeration or summation bound is too large to materialize.
    EnumerationTooLarge { count: u128, limit: u128 },
    /// A numeric count did not land within tolerance of an integer.
    IntegralityFailure { residual: f64, tolerance: f64 },
    /// Substitution required inverting a non-unit.
    NotAUnit,
    /// Integer overflow while evaluating a closed-form count.
    CountOverflow,
    /// A structure tuple's form count does not match the ring dimension.
    TupleShapeMismatch { vars: usize, forms: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag, one per variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAnOddPrime(_) => "NotAnOddPrime",
            Error::DivisionByZero => "DivisionByZero",
            Error::RingMismatch => "RingMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::NegativeExponent { .. } => "NegativeExponentOnPolynomialVariable",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::NotInFrobeniusSubring => "NotInFrobeniusSubring",
            Error::DegreeError { .. } => "DegreeError",
            Error::NotClosed => "NotClosed",
            Error::InternalCartierError(_) => "InternalCartierError",
            Error::InvalidStructureConstants(_) => "InvalidStructureConstants",
            Error::LevelError { .. } => "LevelError",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::IntegralityFailure { .. } => "IntegralityFailure",
            Error::NotAUnit => "NotAUnit",
            Error::CountOverflow => "CountOverflow",
            Error::TupleShapeMismatch { .. } => "TupleShapeMismatch",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAnOddPrime(p) => write!(f, "{} is not an odd prime in [3, 2^31]", p),
            Error::DivisionByZero => write!(f, "division by zero in the prime field"),
            Error::RingMismatch => write!(f, "operands live in different polynomial rings"),
            Error::AlgebraMismatch => write!(f, "operands live in different Lie algebras"),
            Error::NegativeExponent { var } => {
                write!(f, "negative exponent on non-Laurent variable {}", var)
            }
            Error::ExponentOverflow => write!(f, "exponent arithmetic overflow"),
            Error::NotInFrobeniusSubring => {
                write!(f, "polynomial is not a p-th power")
            }
            Error::DegreeError { expected, got } => {
                write!(f, "expected a form of degree {}, got degree {}", expected, got)
            }
            Error::NotClosed => write!(f, "differential form is not closed"),
            Error::InternalCartierError(msg) => {
                write!(f, "internal Cartier consistency failure: {}", msg)
            }
            Error::InvalidStructureConstants(msg) => {
                write!(f, "invalid structure constants: {}", msg)
            }
            Error::LevelError { requested, max } => {
                write!(f, "truncation level {} exceeds item level {}", requested, max)
            }
            Error::EnumerationTooLarge { count, limit } => {
                write!(f, "enumeration of {} items exceeds the limit {}", count, limit)
            }
            Error::IntegralityFailure { residual, tolerance } => {
                write!(
                    f,
                    "sum is {:.3e} away from the nearest integer (tolerance {:.3e})",
                    residual, tolerance
                )
            }
            Error::NotAUnit => write!(f, "substitution image of a Laurent variable is not a unit"),
            Error::CountOverflow => write!(f, "count does not fit in 128 bits"),
            Error::TupleShapeMismatch { vars, forms } => {
                write!(f, "tuple has {} forms but the ring has {} variables", forms, vars)
            }
        }
    }
}

impl std::error::Error for Error {}
