use thiserror::Error;

/// Errors raised by the evaluators and oracles in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach its tolerance within the allowed budget.
    #[error("{what} did not converge after {terms} terms")]
    NotConverged { what: &'static str, terms: usize },

    /// A polytope description does not bound every coordinate.
    #[error("unbounded polytope: {0}")]
    Unbounded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
