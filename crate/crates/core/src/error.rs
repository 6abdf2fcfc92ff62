use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is not supported: need an integer s >= 4")]
    InvalidBase(u32),

    #[error("operation requires an even base, got s = {0}")]
    OddBase(u32),

    #[error("operation requires base {expected}, got s = {actual}")]
    WrongBase { expected: u32, actual: u32 },

    #[error("digit {digit} is outside the alphabet 0..={max}")]
    MalformedDigit { digit: u32, max: u32 },

    #[error("cannot rewrite pair at position {pos}: {reason}")]
    NotRewritable { pos: usize, reason: String },

    #[error("value outside the domain: {0}")]
    Domain(String),

    #[error("resource guard exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid digit law: {0}")]
    InvalidLaw(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
