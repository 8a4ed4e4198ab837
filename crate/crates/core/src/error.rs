use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{s} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u32, s: u32, bound: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (F_{0} and F_{1})")]
    FieldMismatch(u32, u32),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degenerate Mobius transformation (ad - bc = 0)")]
    DegenerateMobius,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("enumeration budget of {0} candidates exceeded")]
    BudgetExceeded(u64),
    #[error("working precision exhausted at {0} terms")]
    PrecisionExhausted(usize),
    #[error("inconsistent linear system")]
    InconsistentSystem,
    #[error("invalid shard: {0}")]
    InvalidShard(String),
    #[error("checkpoint does not match this run: {0}")]
    CheckpointMismatch(String),
    #[error("malformed checkpoint: {0}")]
    CheckpointFormat(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
