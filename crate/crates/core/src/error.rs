use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The quiver is not of type A.
    NotTypeA(String),
    /// A d-vector violates the three-cycle parity condition.
    NotInW(String),
    /// Preconditions of a formula are not met.
    AssumptionViolated(String),
    /// The vertex set does not induce a linear subquiver.
    NotLinear(String),
    InvalidDelta(String),
    /// A vertex cannot be reached from the base vertex.
    Unreachable(u32),
    InexactDivision,
    /// Exchange-graph search exceeded its seed budget.
    ExplosionGuard(usize),
    FrozenVertex(u32),
    InvalidVertex(u32),
    InvalidEndpoint(String),
    InvalidQuiver(String),
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotTypeA(_) => "NotTypeA",
            Error::NotInW(_) => "NotInW",
            Error::AssumptionViolated(_) => "AssumptionViolated",
            Error::NotLinear(_) => "NotLinear",
            Error::InvalidDelta(_) => "InvalidDelta",
            Error::Unreachable(_) => "Unreachable",
            Error::InexactDivision => "InexactDivision",
            Error::ExplosionGuard(_) => "ExplosionGuard",
            Error::FrozenVertex(_) => "FrozenVertex",
            Error::InvalidVertex(_) => "InvalidVertex",
            Error::InvalidEndpoint(_) => "InvalidEndpoint",
            Error::InvalidQuiver(_) => "InvalidQuiver",
            Error::Parse(_) => "Parse",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotTypeA(m) => write!(f, "quiver is not of type A: {m}"),
            Error::NotInW(m) => write!(f, "vector is not a realizable d-vector: {m}"),
            Error::AssumptionViolated(m) => write!(f, "assumption violated: {m}"),
            Error::NotLinear(m) => write!(f, "not a linear full subquiver: {m}"),
            Error::InvalidDelta(m) => write!(f, "invalid orientation sequence: {m}"),
            Error::Unreachable(v) => write!(f, "vertex {v} is unreachable from the base vertex"),
            Error::InexactDivision => write!(f, "Laurent division is not exact"),
            Error::ExplosionGuard(n) => write!(f, "exchange graph exceeded {n} seeds"),
            Error::FrozenVertex(v) => write!(f, "vertex {v} is frozen"),
            Error::InvalidVertex(v) => write!(f, "vertex {v} is out of range"),
            Error::InvalidEndpoint(m) => write!(f, "invalid broken-line endpoint: {m}"),
            Error::InvalidQuiver(m) => write!(f, "invalid quiver: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
