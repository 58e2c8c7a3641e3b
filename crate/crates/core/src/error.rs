use thiserror::Error;

use crate::ybe::SolveConditions;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("cannot mix {0} and {1} scalars")]
    ModeMismatch(&'static str, &'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("float tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("dual matrix undefined: {0} vanishes")]
    UndefinedDual(&'static str),

    #[error("Delta statistics undefined: {0} vanishes")]
    StatisticsUndefined(&'static str),

    #[error("matrix is singular")]
    Singular,

    #[error("Yang-Baxter composition undefined: {0}")]
    Undefined(Box<SolveConditions>),

    #[error("degenerate product: {} vanish(es)", .0.join(", "))]
    DegenerateProduct(Vec<&'static str>),

    #[error("not in S: {0}")]
    NotInS(String),

    #[error("composition undefined: Delta statistics do not match ({left} vs {right})")]
    DeltaMismatch { left: String, right: String },

    #[error("not a groupoid element: {0}")]
    NotGroupoidElement(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("sampling gave up after {0} rejected draws")]
    SamplingExhausted(usize),

    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
