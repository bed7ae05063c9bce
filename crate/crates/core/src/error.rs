use thiserror::Error;

/// Errors raised by the exact and numeric kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("constant term is not a unit in the coefficient ring")]
    NonUnitConstant,
    #[error("inexact division by (1 - z) at coefficient q^{index}")]
    InexactPoleDivision { index: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("object has a pole at z = 1 that cannot be represented over this ring")]
    UnrepresentablePole,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition size must be non-negative, got {0}")]
    NegativeSize(i64),
    #[error("crank of the empty partition is undefined")]
    EmptyCrank,
    #[error("{sub:?} is not a subpartition of {whole:?}")]
    NotSubpartition { sub: Vec<u32>, whole: Vec<u32> },
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidParts(Vec<u32>),
    #[error("fold k must be at least 1")]
    InvalidFold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("infinite product has factors constant in q and does not converge q-adically")]
    NoQAdicConvergence,
    #[error("evaluation point z = 1 meets a pole of order {0}")]
    PoleAtOne(u32),
    #[error("|q| must be < 1 for power-series evaluation")]
    OutsideDisk,
    #[error("z must be nonzero")]
    ZeroZ,
    #[error("numeric summation did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("|f(m)| >= 1: the periodic series diverges")]
    Divergent,
    #[error("|f(m)| is within the guard band of 1; magnitude cannot be decided at this precision")]
    IndeterminateMagnitude,
    #[error("zero denominator in continued fraction at level {0}")]
    ZeroConvergentDenominator(usize),
    #[error("denominator factor (1 - b zeta^{index}) vanishes")]
    VanishingDenominator { index: usize },
    #[error("singular parameters: {0}")]
    Singular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("routes disagree: {0}")]
    RouteMismatch(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite id `{0}`")]
    UnknownSuite(String),
    #[error("order {order} is below the minimum {min} for suite {id}")]
    OrderTooLow { id: String, order: usize, min: usize },
    #[error("suite {id} failed to execute: {message}")]
    Execution { id: String, message: String },
}
