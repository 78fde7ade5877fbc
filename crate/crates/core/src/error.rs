use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input: bad walk, vertex out of range, singular basis, ...
    #[error("structural error: {0}")]
    Structural(String),

    /// Input is well formed but violates the precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {edges} edges, limit {limit}")]
    Budget { edges: usize, limit: usize },

    #[error("no generic direction sample found after {attempts} attempts (seed {seed})")]
    GenericitySampling { attempts: usize, seed: u64 },

    /// Two independent decision routes disagreed, or a certificate failed
    /// verification. Always indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
