use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("jacobian rank {rank} < {expected} at the chosen point")]
    SingularPoint { rank: usize, expected: usize },
    #[error("no vanishing form up to degree {0}")]
    NoHypersurfaceFound(usize),
    #[error("no hyperplane section with a triple point")]
    NotHyperplaneCase,
    #[error("triple-point hyperplane is not unique (solution dimension {0})")]
    NonUnique(usize),
    #[error("points are not in general position: {0}")]
    NotGeneral(String),
    #[error("point lies outside both affine charts")]
    ChartMiss,
    #[error("enumeration of {needed} points exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("point lies on the variety")]
    PointOnVariety,
    #[error("expansion exceeds the term budget of {0}")]
    TermBudget(usize),
    #[error("field reduction failed: denominator divisible by {0}")]
    BadReduction(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
