use thiserror::Error;

/// Errors raised while parsing a defining-function expression.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("variable z{index} out of range for dimension {n}")]
    Dimension { index: usize, n: usize },
    #[error("expression is not provably real: {0}")]
    Realness(String),
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
}

/// Errors raised while evaluating a defining function at a point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{op} undefined at this point in `{expr}`")]
    DomainOfDefinition { op: &'static str, expr: String },
    #[error("missing parameter ${0}")]
    MissingParameter(String),
    #[error("guard violated: {0}")]
    Guard(String),
    #[error("point outside the locality box |z_j| < {radius}")]
    Locality { radius: f64 },
    #[error("point has dimension {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("non-finite value")]
    NonFinite,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unknown domain family `{0}`")]
    UnknownDomain(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("derivatives support at most {max} complex variables, got {n}")]
    TooManyVariables { n: usize, max: usize },
    #[error("defining function does not change sign along the search ray")]
    NoSignChange,
    #[error("gradient is degenerate (|grad r| = {grad_norm:e})")]
    DegenerateGradient { grad_norm: f64 },
    #[error("bidisc center is not inside the domain (r = {r:e})")]
    CenterOutside { r: f64 },
    #[error("degenerate fit: {usable} usable samples, need {needed}")]
    DegenerateFit { usable: usize, needed: usize },
    #[error("test function is not supported by a half-space at the point: {0}")]
    SupportFailure(String),
    #[error("sample left the domain: {0}")]
    ExitDomain(String),
    #[error("curve left the collar: distance {distance:e} > {limit:e}")]
    CollarExit { distance: f64, limit: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain file: {0}")]
    DomainFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
