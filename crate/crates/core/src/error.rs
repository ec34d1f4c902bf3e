use alloc::string::String;

/// Errors raised by the arithmetic and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a place: {0}")]
    InvalidPlace(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("budget exceeded: {what} ({value} > {limit})")]
    Budget { what: &'static str, value: u64, limit: u64 },
    #[error("no squarefree specialization found in constant extensions up to degree {0}")]
    NoSpecialization(u32),
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("not integral at {0}")]
    NotIntegral(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
