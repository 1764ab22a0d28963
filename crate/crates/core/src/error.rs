use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input violates a precondition of the requested integral.
    #[error("domain error: {0}")]
    Domain(String),

    /// A finite result does not fit in an f64.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A series or quadrature did not reach the requested tolerance.
    #[error("no convergence after {terms} terms (value {value:e}, error estimate {estimate:e})")]
    NonConvergence {
        value: f64,
        estimate: f64,
        terms: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
