use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("abscissa {x} outside the domain [0, {t}]")]
    Domain { x: f64, t: f64 },

    #[error("function is singular at x = 0")]
    Singularity,

    #[error("theta {theta} outside the admissible range [{lo}, {hi}]")]
    OutOfRange { theta: f64, lo: f64, hi: f64 },

    #[error("invalid rank function: {0}")]
    InvalidFunction(String),

    #[error("functions live on different domains: T = {0} vs T = {1}")]
    MismatchedDomains(f64, f64),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("pair generation failed: {0}")]
    Generation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
