use thiserror::Error;

use crate::numerics::Rat;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a coefficient whose enclosure contains zero")]
    DivisionByUncertainZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("order undecidable below truncation y^{0}")]
    TruncationAmbiguous(Rat),
    #[error("truncation too small: need y^{needed}, have y^{available}")]
    TruncationTooSmall { needed: Rat, available: Rat },
    #[error("polar does not sit on a Kuo-Lu bar: {0}")]
    BarMismatch(String),
    #[error("polars grouped in one canyon disagree on {0}")]
    InconsistentCanyon(String),
    #[error("inconsistent development at y^{exponent}")]
    InconsistentDevelopment { exponent: Rat },
    #[error("{count} canyon matchings exceed the cap of {cap}")]
    CombinatorialBlowup { count: usize, cap: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
