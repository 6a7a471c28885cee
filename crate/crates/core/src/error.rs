use thiserror::Error;

/// Errors raised by the solvers and the types they operate on.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("value {value} is outside the unit interval")]
    OutOfRange { value: f64 },

    #[error("{what} must not be empty")]
    Empty { what: &'static str },

    #[error("enumeration needs {required} combinations, budget is {cap}")]
    EnumerationBudgetExceeded { required: u128, cap: u64 },

    #[error("subset characterization over {columns} columns exceeds the cap of {cap}")]
    SubsetCapExceeded { columns: usize, cap: usize },

    #[error("oracle budget exceeded: {required} points, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
