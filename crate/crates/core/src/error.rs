use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integrand returned {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("endpoint exponent {exponent} is not integrable (must exceed -1)")]
    NotIntegrable { exponent: f64 },

    #[error("{what} did not converge: value {value:e}, error estimate {error_estimate:e}")]
    NotConverged {
        what: String,
        value: f64,
        error_estimate: f64,
    },

    #[error("argument outside the numerically stable domain: {0}")]
    Domain(String),

    #[error("the law of X(t) has an atom; use the jump-sum density instead")]
    AtomicLaw,

    #[error("unsupported model for this operation: {0}")]
    UnsupportedModel(String),

    #[error("could not start the simulation thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
