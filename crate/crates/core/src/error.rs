use alloc::string::String;
use core::fmt;

/// One error type for the whole core. Variants mirror the failure modes the
/// operations are contracted to report; none of them are silent fallbacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different ambient dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Operands have different representation kinds (lattice vs intervals vs cubes).
    KindMismatch,
    /// Polycubes must share their cell scale before set operations.
    ScaleMismatch,
    /// The operation needs a nonempty input.
    Empty(&'static str),
    /// Division by a zero-measure set (doubling of a degenerate continuous set).
    ZeroMeasure,
    /// An enumeration would visit more candidates than the caller allowed.
    BudgetExceeded { needed: u64, budget: u64 },
    /// A locality set was expected to be symmetric with 0 in it.
    NotSymmetric,
    /// A progression failed a properness precondition (collision witness inside).
    NotProper(String),
    /// A progression is not separated enough for the requested operation;
    /// carries a witness pair of colliding elements.
    NotSeparated(String),
    /// A point could not be written as p + q during a lift.
    NotInPPlusQ(String),
    /// A cover/LP instance has no feasible solution.
    Infeasible(&'static str),
    /// The LP is unbounded in the objective direction.
    Unbounded,
    /// A certified comparison stayed undecided at the precision cap.
    Undecided(&'static str),
    /// A fibered set was expected in compressed form ([0, len] fibers).
    NotCompressed(String),
    /// Free-form precondition violation with a short reason.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::KindMismatch => write!(f, "set representation kinds differ"),
            Error::ScaleMismatch => write!(f, "polycube scales differ"),
            Error::Empty(what) => write!(f, "{what} must be nonempty"),
            Error::ZeroMeasure => write!(f, "zero-measure denominator"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration budget exceeded: needs {needed}, budget {budget}")
            }
            Error::NotSymmetric => write!(f, "locality set is not symmetric about 0"),
            Error::NotProper(w) => write!(f, "progression is not proper: {w}"),
            Error::NotSeparated(w) => write!(f, "progression is not separated: {w}"),
            Error::NotInPPlusQ(w) => write!(f, "point is not in P+Q: {w}"),
            Error::Infeasible(what) => write!(f, "infeasible: {what}"),
            Error::Unbounded => write!(f, "linear program is unbounded"),
            Error::Undecided(what) => {
                write!(f, "comparison undecided at precision cap: {what}")
            }
            Error::NotCompressed(w) => write!(f, "fibered set is not compressed: {w}"),
            Error::Precondition(w) => write!(f, "precondition violated: {w}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
