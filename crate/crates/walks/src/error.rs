//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("nothing to eliminate")]
    NothingToEliminate,
    #[error("precision exhausted (achieved radius {radius:e})")]
    PrecisionExhausted { radius: f64 },
    #[error("degenerate critical point")]
    DegenerateCriticalPoint,
    #[error("numeric zero test undecidable (radius {radius:e})")]
    NumericAmbiguity { radius: f64 },
    #[error("critical point iteration did not converge; model hypotheses violated?")]
    CriticalPointDiverged,
    #[error("elimination lost the root")]
    EliminationLostRoot,
    #[error("unknown model id `{0}`")]
    UnknownModelId(String),
    #[error("trivial model")]
    TrivialModel,
    #[error("insufficient terms: need at least {needed}, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("leading coefficient vanishes at n = {0}")]
    LeadingCoefficientZero(i64),
    #[error("no nonzero excursion found below length {0}; model confined to a half-plane?")]
    NoExcursion(usize),
    #[error("exact enumeration beyond memory budget; use the mod-p backend")]
    ExactBudget,
    #[error("analysis out of template")]
    OutOfTemplate,
    #[error("dimension {0} not supported here")]
    BadDimension(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
