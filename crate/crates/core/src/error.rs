use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid rational literal {0:?}")]
    Rational(String),

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("{what} exceeds bound: {value} > {limit}")]
    Bound {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error(
        "instance too large for exact MMS: {assignments} assignments exceed work bound {bound}"
    )]
    WorkBound { assignments: u128, bound: u128 },

    #[error("invalid matroid: {0}")]
    Matroid(String),

    #[error("wrong valuation class: {0}")]
    ValuationClass(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An invariant that the algorithm guarantees was violated; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Rational(_) => "rational",
            Error::Instance(_) => "instance",
            Error::Bound { .. } => "bound",
            Error::WorkBound { .. } => "work_bound",
            Error::Matroid(_) => "matroid",
            Error::ValuationClass(_) => "valuation_class",
            Error::Argument(_) => "argument",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
