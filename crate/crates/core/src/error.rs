use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarSetMismatch(String, String),

    #[error("{what} index {index} out of range {min}..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        min: i64,
        max: i64,
    },

    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),

    #[error("variable {0} is assigned zero but occurs with a negative exponent")]
    ZeroToNegativePower(String),

    #[error("polynomial is not symmetric: transposition {0} moves it")]
    NotSymmetric(String),

    #[error("element is not invariant: generator {0} moves it")]
    NotInvariant(String),

    #[error("negative exponent of {0} where a polynomial was required")]
    NegativeExponent(String),

    #[error("operation requires a context with the central relation imposed")]
    NotQuotient,

    #[error("enumeration needs {required} objects but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("wrong model flavor: {0}")]
    WrongFlavor(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
