use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter hits a pole, a vanishing normalizer or leaves the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// A request exceeds a configured size limit.
    #[error("capacity error: {what} = {requested} exceeds the configured maximum {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    /// Inputs are individually valid but inconsistent with each other.
    #[error("contract error: {0}")]
    Contract(String),
    /// An iterative solver failed to converge.
    #[error("internal error: {what} did not converge after {iterations} iterations (last correction {last_step:e})")]
    NoConvergence {
        what: String,
        iterations: usize,
        last_step: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
