use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },

    #[error("series shape mismatch: order {left_order}/{left_vars} vars vs order {right_order}/{right_vars} vars")]
    ShapeMismatch {
        left_order: usize,
        left_vars: usize,
        right_order: usize,
        right_vars: usize,
    },

    #[error("enumeration budget exceeded: word of length {points} > budget {budget}")]
    BudgetExceeded { points: usize, budget: usize },

    #[error("block ({0}, {1}) does not join complementary letters")]
    NotAdapted(usize, usize),

    #[error("invalid pair partition: {0}")]
    InvalidPartition(String),

    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),

    #[error("series has no reciprocal: constant term is not a nonzero scalar")]
    NotInvertible,

    #[error("quadrature did not converge: value {value}, error estimate {achieved:e}")]
    Quadrature { value: f64, achieved: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
