use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A quaternion expected to be pure has a real part above tolerance.
    NotPure,
    /// A quaternion expected to have norm one does not.
    NotUnit,
    /// Division by (or conjugation by) the zero quaternion.
    ZeroDivisor,
    /// The operation needs square roots or trigonometry.
    ExactModeUnsupported,
    NotSquare { rows: usize, cols: usize },
    ShapeMismatch,
    /// The operation expects a specific size, e.g. 2x2.
    WrongSize { expected: usize, found: usize },
    Singular,
    NonFinite,
    NoConvergence,
    /// An identity was requested outside of the range where it holds.
    GuardViolated(&'static str),
    DimensionTooLarge { dim: usize, max: usize },
    NotGeneric,
    NotInIdeal,
    /// Ranks computed modulo different primes disagreed even after exact escalation.
    RankUnstable,
    DegreeTooLarge { total: usize, max: usize },
    /// A computed bigraded dimension differs from its mirror cell.
    Asymmetric { k: usize, l: usize },
    Parse { pos: usize, msg: String },
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPure => write!(f, "quaternion is not pure"),
            Error::NotUnit => write!(f, "quaternion does not have unit norm"),
            Error::ZeroDivisor => write!(f, "division by zero quaternion"),
            Error::ExactModeUnsupported => {
                write!(f, "operation is only available for floating point scalars")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::ShapeMismatch => write!(f, "matrix shapes are incompatible"),
            Error::WrongSize { expected, found } => {
                write!(f, "expected a {expected}x{expected} matrix, found size {found}")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::NonFinite => write!(f, "floating point result is not finite"),
            Error::NoConvergence => write!(f, "iteration did not converge"),
            Error::GuardViolated(why) => write!(f, "identity guard violated: {why}"),
            Error::DimensionTooLarge { dim, max } => {
                write!(f, "algebra dimension {dim} exceeds the configured bound {max}")
            }
            Error::NotGeneric => write!(f, "matrix is not diagonal with distinct eigenvalues"),
            Error::NotInIdeal => write!(f, "polynomial does not vanish on the sampled pairs"),
            Error::RankUnstable => write!(f, "modular ranks disagree"),
            Error::DegreeTooLarge { total, max } => {
                write!(f, "total degree {total} exceeds the configured cap {max}")
            }
            Error::Asymmetric { k, l } => write!(f, "dimension at ({k},{l}) differs from ({l},{k})"),
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
