use crate::lp::LpError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid theory: {0}")]
    InvalidTheory(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state list contains duplicates (indices {0} and {1})")]
    DuplicateStates(usize, usize),
    #[error("operation requires an exact (rational) theory")]
    RequiresExact,
    #[error("node budget exceeded: {nodes} nodes > budget {budget}")]
    BudgetExceeded { nodes: usize, budget: usize },
    #[error("floor of {what} is ambiguous at the maximum working precision")]
    PrecisionExhausted { what: String },
    #[error("internal solver inconsistency: {0}")]
    Internal(String),
    #[error("floating-point answer is indeterminate: {0}")]
    Indeterminate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
