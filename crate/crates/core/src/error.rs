use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("variable table mismatch")]
    TableMismatch,

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coefficient of {monomial} is not divisible by {divisor}")]
    NotDivisible { monomial: String, divisor: String },

    #[error("matrix is singular")]
    Singular,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("no witness found for d = {d} after {attempts} attempts (seed {seed})")]
    AttemptsExhausted { d: usize, attempts: usize, seed: u64 },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
