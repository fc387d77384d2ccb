use thiserror::Error;

/// Errors raised by group construction and the invariant computations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("group construction failed: {0}")]
    Construction(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A cross-check between two computations disagreed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(spec: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            spec: spec.to_string(),
            reason: reason.into(),
        }
    }
}
