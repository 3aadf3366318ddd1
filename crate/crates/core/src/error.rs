use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("non-exact division: remainder is nonzero")]
    NonExactDivision,
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("grade {grade} is below the degree {degree}")]
    GradeBelowDegree { grade: usize, degree: usize },
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),
    #[error("ansatz polynomial is zero")]
    ZeroAnsatz,
    #[error("grade {0} is too small for this construction")]
    GradeTooSmall(usize),
    #[error("index sum violated: finite {finite} + infinite {infinite} + right {right} + left {left} != grade*rank = {expected}")]
    IndexSumViolation {
        finite: usize,
        infinite: usize,
        right: usize,
        left: usize,
        expected: usize,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("irrational roots where rational ones are required: {0}")]
    Irrational(String),
    #[error("structural identity failed: {0}")]
    Identity(String),
    #[error("singular Möbius map (ad - bc = 0)")]
    SingularMap,
    #[error("specification cannot be realized: {0}")]
    Unrealizable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
