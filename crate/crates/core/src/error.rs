use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("point is not a member of the set (violation {violation:.3e})")]
    NotInSet { violation: f64 },

    #[error("{what} did not converge within {iterations} iterations (achieved {achieved:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        achieved: f64,
    },

    #[error("linear objective is unbounded above on the set")]
    Unbounded,

    #[error("set is unbounded; a finite maximum is not available")]
    UnboundedSet,

    #[error("solution set is not contained in the feasible set")]
    NotSubset,

    #[error("map is not constant on the solution set (spread {spread:.3e})")]
    NotConstantOnSolutions { spread: f64 },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("too many subsets to enumerate ({0})")]
    EnumerationTooLarge(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
