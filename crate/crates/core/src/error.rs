use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("partition {partition} has more than {d} nonzero parts")]
    TooManyParts { partition: String, d: usize },

    #[error("budget exceeded while {what}: needs {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("polynomials are not homogeneous of a common degree")]
    Inhomogeneous,

    #[error("degenerate point configuration: evaluation matrix is singular")]
    DegeneratePoints,

    #[error("pivot generator for p0[{i},{j}] has no unit linear term")]
    MissingPivot { i: u8, j: u8 },

    #[error("diagonal variable {var} survives the q-substitution")]
    DiagonalSurvives { var: String },

    #[error("identity {label} has a nonzero residual with {terms} terms")]
    NonzeroResidual { label: String, terms: usize },

    #[error("not unique: {0}")]
    NotUnique(String),

    #[error("prime {p} divides a coefficient denominator")]
    BadPrime { p: u64 },

    #[error("ranks disagree across arithmetic modes: {0}")]
    RankMismatch(String),

    #[error("check failed: {0}")]
    Violation(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
