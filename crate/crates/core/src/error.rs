//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

use crate::series::Exponent;

/// Errors produced by exact computations in this crate.
///
/// Everything here is a genuine precondition violation or an input outside
/// the implemented search space; internal identities that are guaranteed by
/// theory are asserted, not returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of zero, in a scalar field or a series ring.
    DivisionByZero,
    /// `embed` asked to move a scalar from conductor `from` to a conductor
    /// `to` that `from` does not divide.
    NotASubfield { from: u64, to: u64 },
    /// A truncated series does not carry enough known terms to certify the
    /// requested result.
    InsufficientPrecision {
        needed: Exponent,
        available: Exponent,
    },
    /// A series operation received a series whose ramification does not
    /// divide the requested covering level.
    RamificationMismatch { ramification: u64, level: u64 },
    /// Matrix dimensions do not match the operation.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The characteristic polynomial did not split under the implemented
    /// root search (rational roots, rational-discriminant quadratics, and
    /// probed candidates).
    EigenvaluesNotFound,
    /// A user-supplied eigenvalue list failed exact verification.
    EigenvalueVerification,
    /// `descend` received a connection that is not a pull-back: the given
    /// exponent is not divisible by the covering degree.
    NotInvariant { exponent: Exponent },
    /// A series that is constant by theory had a visibly nonzero
    /// non-constant term (precondition violation or insufficient precision).
    NotConstant,
    /// The given matrix does not commute with the base point.
    NotInCentralizer,
    /// The given matrix is not of finite order dividing the stated level.
    NotTorsion,
    /// The operation requires a matrix in Jordan normal form.
    NotJordanForm,
    /// The two inputs are not related (no rational block shift matches).
    NotRelated,
    /// The operation requires a connection of the first kind.
    NotFirstKind,
    /// A torsion datum violated the determinant-one congruence.
    DeterminantConstraint,
    /// Cocycle push-forward asked for a level that the source level does
    /// not divide.
    NotDivisible { from: u64, to: u64 },
    /// Torsion enumeration would exceed the configured bound.
    EnumerationBound { count: u64 },
    /// A connection tagged `sl` has a nonzero trace.
    TraceNonzero,
    /// A gauge map tagged `sl` does not have determinant one.
    DeterminantNotOne,
    /// A matrix that must be invertible is singular.
    Singular,
    /// Free-form parse error, reported with an input location.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotASubfield { from, to } => {
                write!(f, "conductor {from} does not divide {to}")
            }
            Error::InsufficientPrecision { needed, available } => write!(
                f,
                "insufficient precision: need O(z^{needed}), have O(z^{available})"
            ),
            Error::RamificationMismatch {
                ramification,
                level,
            } => write!(
                f,
                "ramification {ramification} does not divide covering level {level}"
            ),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::EigenvaluesNotFound => {
                write!(f, "eigenvalues not found by the implemented root search")
            }
            Error::EigenvalueVerification => {
                write!(f, "supplied eigenvalue list failed exact verification")
            }
            Error::NotInvariant { exponent } => {
                write!(f, "not a pull-back: exponent {exponent} is not divisible")
            }
            Error::NotConstant => write!(f, "series expected to be constant is not"),
            Error::NotInCentralizer => write!(f, "matrix does not centralize the base point"),
            Error::NotTorsion => write!(f, "matrix is not torsion of the stated order"),
            Error::NotJordanForm => write!(f, "matrix is not in Jordan normal form"),
            Error::NotRelated => write!(f, "connections are not related"),
            Error::NotFirstKind => write!(f, "connection is not of the first kind"),
            Error::DeterminantConstraint => {
                write!(f, "torsion exponents violate the determinant congruence")
            }
            Error::NotDivisible { from, to } => {
                write!(f, "level {from} does not divide target level {to}")
            }
            Error::EnumerationBound { count } => {
                write!(f, "torsion enumeration bound exceeded ({count} candidates)")
            }
            Error::TraceNonzero => write!(f, "sl connection has nonzero trace"),
            Error::DeterminantNotOne => write!(f, "sl gauge map does not have determinant 1"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
