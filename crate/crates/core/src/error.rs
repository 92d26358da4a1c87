use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("generation budget exceeded: shape {shape} has {required} inverted tableaux, budget is {budget}")]
    BudgetExceeded {
        shape: String,
        required: String,
        budget: u64,
    },

    #[error("unsupported shape {0}: operation requires a rectangular shape")]
    UnsupportedShape(String),

    #[error("expected exactly {expected} inversion(s), found {found}")]
    WrongInversionCount { expected: usize, found: usize },

    #[error("wrong shape: expected {expected}, found {found}")]
    WrongShape { expected: String, found: String },

    #[error("input tableau is not standard")]
    NotStandard,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A bumping procedure reached a state its construction rules out.
    #[error("bumping invariant violated: {0}")]
    BumpInvariant(String),
}

impl Error {
    /// Stable machine-readable reason, used by the CLI's error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) => "invalid-partition",
            Error::InvalidTableau(_) => "invalid-tableau",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::UnsupportedShape(_) => "unsupported-shape",
            Error::WrongInversionCount { .. } => "wrong-inversion-count",
            Error::WrongShape { .. } => "wrong-shape",
            Error::NotStandard => "input-not-standard",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::Domain(_) => "domain-error",
            Error::BumpInvariant(_) => "bump-invariant",
        }
    }
}
