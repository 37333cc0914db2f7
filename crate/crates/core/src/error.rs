use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: strategy spaces need at least 2 pure strategies")]
    InvalidDimension { dim: usize },

    #[error("infeasible strategy parameter {p} for dimension {dim}: feasible range is [{p_min}, 1]")]
    InfeasibleParameter { p: f64, dim: usize, p_min: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid initial state: {0}")]
    InvalidState(String),

    #[error("invalid payoff matrix: {0}")]
    InvalidPayoff(String),

    #[error("point ({p}, {q}) lies outside the feasible rectangle")]
    OutOfDomain { p: f64, q: f64 },

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
