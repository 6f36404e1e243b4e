use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by an interval containing zero ({0})")]
    DivisorContainsZero(String),
    #[error("precision budget exceeded: {needed} bits needed, budget is {budget} bits")]
    PrecisionBudget { needed: u64, budget: u64 },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("cannot add expressions with different e^(pi/2) scale")]
    MixedScale,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
