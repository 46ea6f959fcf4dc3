use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("transposition s_{0} is not admissible")]
    NotAdmissible(usize),
    #[error("parameters are not separate for n = {0}")]
    NotSeparate(usize),
    #[error("degenerate denominator at s_{0}")]
    DegenerateDenominator(usize),
    #[error("super tensor split failed: {0}")]
    SplitFailure(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed module dump: {0}")]
    Dump(String),
}

pub type Result<T> = std::result::Result<T, Error>;
