use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs outside the documented domain of an operation.
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("division by zero")]
    DivisionByZero,

    /// Parameters the implementation deliberately does not support.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// An exhaustive enumeration would exceed the caller's budget.
    #[error("enumeration of {required} items exceeds budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A theorem-level guarantee did not hold. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
