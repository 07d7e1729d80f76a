use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    InvalidArgument(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// An input failed a structural precondition (not a t-design, not
    /// antipodal, …).
    Precondition(String),
    SearchLimit(String),
    OrbitCap(usize),
    BasisUnavailable {
        group: String,
        degree: u32,
    },
    /// A pipeline step failed; carries the step name.
    Step {
        step: String,
        reason: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::SearchLimit(s) => write!(f, "search limit exceeded: {s}"),
            Error::OrbitCap(n) => write!(f, "orbit exceeds cap of {n} points"),
            Error::BasisUnavailable { group, degree } => {
                write!(f, "invariant harmonic basis unavailable for {group} in degree {degree}")
            }
            Error::Step { step, reason } => write!(f, "step `{step}` failed: {reason}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
