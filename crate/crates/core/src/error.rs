use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("basis rows are linearly dependent")]
    DependentRows,

    #[error("difference #{index} is the identity of the group")]
    IdentityDifference { index: usize },

    #[error("{what}: size {size} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, size: String, cap: String },

    #[error("the zero vector does not generate a rank-1 lattice")]
    ZeroVector,

    #[error("graph has no cycle")]
    Acyclic,

    #[error("constructed set is not difference-avoiding: {0}")]
    NotAvoiding(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("cosine polynomial could not be certified nonnegative after {attempts} attempts")]
    CertificationFailed { attempts: usize },

    #[error("no construction applies: {0}")]
    NoConstructionApplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what,
            size: size.to_string(),
            cap: cap.to_string(),
        }
    }
}
