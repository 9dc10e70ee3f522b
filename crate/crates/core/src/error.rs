use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("operands live over different fields (p = {0} vs p = {1})")]
    FieldMismatch(u32, u32),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("cannot invert a series that is zero to precision {0}")]
    InverseOfZero(i64),

    #[error("{0} requires an odd characteristic (p > 2)")]
    CharacteristicTwo(&'static str),

    #[error("square root of a series with odd valuation {0}")]
    OddValuation(i64),

    #[error("leading coefficient {0} is not a square mod {1}")]
    NonResidue(u32, u32),

    #[error("square root of a series that is zero to precision {0}")]
    SqrtOfZero(i64),

    #[error("insufficient precision for {context}: need {required}, have {available}")]
    InsufficientPrecision {
        context: String,
        required: i64,
        available: i64,
    },

    #[error("operation needs a finite precision but the input is exact: {0}")]
    UnboundedPrecision(&'static str),

    #[error("{0} is a perfect square in F_p[T]")]
    PerfectSquare(String),

    #[error("Newton condition fails at x0: v(f(x0)) = {residual}, v(f'(x0)) = {derivative}")]
    NewtonCondition { residual: i64, derivative: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn precision(context: impl Into<String>, required: i64, available: i64) -> Self {
        Error::InsufficientPrecision {
            context: context.into(),
            required,
            available,
        }
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
