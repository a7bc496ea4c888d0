use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("instance has no points")]
    EmptyInstance,
    #[error("point {0} is not on the unit circle")]
    PointOffCircle(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {point} lies on line {line}")]
    PointOnLine { point: usize, line: String },
    #[error("expected axis-parallel lines only")]
    NotAxisParallel,
    #[error("general line with a = b = 0")]
    DegenerateLine,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {0} is isolated; no edge cover exists")]
    HasIsolatedVertex(usize),
    #[error("flip did not strictly dominate the current solution")]
    DominationFailure,
    #[error("no separating solution with at most {0} lines found in the repair search space")]
    RepairExhausted(usize),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("bad pattern: {0}")]
    BadPattern(String),
    #[error("invalid colorful dominating set: {0}")]
    InvalidDominatingSet(String),
    #[error("line budget violated: {0}")]
    BudgetViolation(String),
    #[error("line set does not separate the instance")]
    NotSeparating,
    #[error("no signal line in horizontal track {0}")]
    NoSignalLine(usize),
    #[error("invalid C-RBDS instance: {0}")]
    InvalidCrbds(String),
}

pub type Result<T> = std::result::Result<T, Error>;
