//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed word: generator index {index} out of range (presentation has {ngens})")]
    UnknownGenerator { index: usize, ngens: usize },

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not a group table: {0}")]
    InvalidTable(String),

    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup {0} is not normal in the ambient group")]
    NotNormal(String),

    #[error("coset enumeration exceeded the limit of {max_cosets} cosets")]
    ExceededLimit { max_cosets: usize },

    #[error("coset table is not complete")]
    IncompleteTable,

    #[error("regular representation requires enumeration over the trivial subgroup")]
    NonTrivialSubgroup,

    #[error("homomorphism does not respect the relations: {0}")]
    NotAHomomorphism(String),

    #[error("subgroup is not abelian: witness pair ({0}, {1}) does not commute")]
    NotAbelian(String, String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid polycyclic presentation: {0}")]
    InvalidPcPresentation(String),

    #[error("polycyclic presentation is inconsistent: {0}")]
    Inconsistent(String),

    #[error("infinite polycyclic groups are not supported: generator {0} has no power relation")]
    InfinitePcGroup(usize),

    #[error("q = 0 is not supported by the polycyclic route; use the enumeration route")]
    QZeroUnsupported,

    #[error("group is not {q}-perfect: G/G'G^q has order {obstruction}; use the enumeration route")]
    NotQPerfect { q: u32, obstruction: u64 },

    #[error("unknown group spec `{0}`")]
    UnknownGroupSpec(String),

    #[error("unknown claim id `{id}`; valid ids: {valid}")]
    UnknownClaim { id: String, valid: String },

    #[error("routes disagree: {0}")]
    RouteMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
