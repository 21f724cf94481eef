use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series of degree {degree} has no unique power-sum expansion in {num_vars} variables")]
    DegreeExceedsVariables { degree: usize, num_vars: usize },

    #[error("constant term must be {expected}, found {found}")]
    WrongConstantTerm { expected: String, found: String },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("variable index {index} out of range 1..={num_vars}")]
    IndexOutOfRange { index: usize, num_vars: usize },

    #[error("truncation degree {have} is below the required degree {need}")]
    InsufficientTruncation { have: usize, need: usize },

    #[error("degree {requested} exceeds the Jack degree cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },

    #[error("polynomial is not symmetric in its variables")]
    AsymmetricInput,

    #[error("lln check needs at least 3 increasing values of N, got {0}")]
    InsufficientSequence(usize),

    #[error("mismatched context: {0}")]
    MismatchedContext(String),

    #[error("{what} = {value} exceeds the enumeration cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("projection parameter must lie in (0, 1], got {0}")]
    AlphaOutOfRange(String),

    #[error("Euler relation violated: |eta| - l(mu1) - l(mu2) = {lhs}, genus {genus}")]
    EulerInconsistency { lhs: i64, genus: String },

    #[error("grid needs at least {need} values of N, got {have}")]
    InsufficientGrid { have: usize, need: usize },

    #[error("particle system blew up at t = {time}: gap {gap:e} below guard after {halvings} step halvings")]
    BlowUp { time: f64, gap: f64, halvings: u32 },

    #[error("matrix corners need theta in {{1/2, 1}}, got {0}")]
    UnsupportedTheta(f64),

    #[error("top row must be strictly increasing (entries {0} and {1} tie or are out of order)")]
    NonDistinct(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
