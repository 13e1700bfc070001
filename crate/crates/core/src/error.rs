use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rank mismatch: expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("leading term of the zero vector is undefined")]
    ZeroVector,

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("relation {pair} is not admissible: {monomial} is not below the leading word")]
    AdmissibilityViolation { pair: String, monomial: String },

    #[error("relations are not associative on the triple {triple}: {detail}")]
    AssociativityViolation { triple: String, detail: String },

    #[error("generator {generator} is declared centralizing but {variable}*g - g*{variable} = {commutator}")]
    NotCentral { generator: String, variable: String, commutator: String },

    #[error("the basis is not two-sided: {0}")]
    TwoSidednessFailure(String),

    #[error("resolution has differentials through index {available}, Tor_{k} needs index {needed}")]
    InsufficientResolutionDepth { k: usize, available: usize, needed: usize },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    /// Whether the error stems from an invalid algebra definition.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidAlgebra(_)
                | Error::InvalidOrder(_)
                | Error::AdmissibilityViolation { .. }
                | Error::AssociativityViolation { .. }
        )
    }
}
