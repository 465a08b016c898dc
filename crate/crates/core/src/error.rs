use gnd_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GndError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("could not certify the minimal primes of {0}; supply them in a `minprimes` section")]
    DecompositionIncomplete(String),

    #[error("target ideal lies inside the minimal prime {0}")]
    TargetInsidePrime(String),

    #[error("no active element found: {0}")]
    ActiveElementNotFound(String),

    #[error("jet is not a unit: {0}")]
    NotAUnit(String),

    #[error("jet division failed: {0}")]
    NotDivisible(String),

    #[error("no separable presentation of the coefficient field: {0}")]
    SeparabilityFailure(String),

    #[error("no subsystem passes the Jacobian condition at this precision: {0}")]
    ConditionStarStarFailed(String),

    #[error("could not complete the Jacobian to an admissible square matrix: {0}")]
    CompletionFailed(String),

    #[error("the algorithm fails since the bound N is too small")]
    BoundTooSmall,

    #[error("divisibility violated: {0}")]
    DivisibilityViolated(String),

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("iteration does not contract: {0}")]
    NoContraction(String),
}

pub type Result<T> = std::result::Result<T, GndError>;
