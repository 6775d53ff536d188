use thiserror::Error;

use crate::metric::MetricViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("distance matrix is not square (row {row} has {len} entries, expected {expected})")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("invalid metric: {0}")]
    InvalidMetric(MetricViolation),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a Katetov function: {0}")]
    KatetovViolation(String),
    #[error("value 0 at point {index} would duplicate an existing point")]
    DuplicatePoint { index: usize },
    #[error("functions live on different spaces")]
    SpaceMismatch,
    #[error("lambda {lambda} must lie strictly between 0 and the diameter bound {diam}")]
    LambdaOutOfRange { lambda: String, diam: String },
    #[error("{what} is not a multiple of 1/{denom}")]
    DenominatorMismatch { what: String, denom: u64 },
    #[error("glue map is not a partial isometry at pair ({i}, {j})")]
    NotIsometry { i: usize, j: usize },
    #[error("empty glue set needs an explicit diameter bound")]
    EmptyGlue,
    #[error("precondition (a) fails at z = {z}: |d(x,z) - d(y,z)| >= delta")]
    PreconditionA { z: usize },
    #[error("precondition (b) fails at z = {z}: delta > d(x,z) + d(y,z)")]
    PreconditionB { z: usize },
    #[error("{what} exceeds the diameter bound {diam}")]
    DiameterExceeded { what: String, diam: String },
    #[error("prescribed distances do not form a metric: {0}")]
    MetricFailure(MetricViolation),
    #[error("index clash: {0}")]
    IndexClash(String),
    #[error("back-and-forth state has no pairs")]
    EmptyState,
    #[error("invalid back-and-forth state: {0}")]
    InvalidState(String),
    #[error("adding points would pass the budget of {budget} points")]
    BudgetExceeded { budget: usize },
    #[error("no point of the approximant realizes the required profile")]
    Unsaturated,
    #[error("subset is empty")]
    EmptySubset,
    #[error("vector {which} is not on the unit sphere (squared norm {norm_sq})")]
    NotOnSphere { which: String, norm_sq: String },
    #[error("supports of parts {i} and {j} overlap")]
    OverlappingSupports { i: usize, j: usize },
    #[error("vertex {0} cannot be adjacent to itself")]
    SelfLoop(u64),
    #[error("membership depends on coordinate {vertex}, which the code does not fix")]
    UndeterminedMembership { vertex: u64 },
    #[error("codes disagree at vertex {vertex}")]
    IncompatibleCodes { vertex: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
