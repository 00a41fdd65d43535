use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected} relays, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("too many relays: {0} (at most {max} supported)", max = crate::cutset::MAX_RELAYS)]
    TooManyRelays(usize),

    #[error("grid oracle budget exceeded: {needed} evaluations requested, budget is {budget}")]
    BudgetExceeded { needed: f64, budget: f64 },

    #[error("sequences are not similarly ordered (indices {0} and {1})")]
    NotSimilarlyOrdered(usize, usize),

    #[error("override f(V) = {value} violates lower bound {bound} at subset {mask:#b}")]
    OverrideBelowBound { mask: u32, value: f64, bound: f64 },

    #[error("insufficient data: {0} qualifying rows, need at least 2")]
    InsufficientData(usize),

    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
