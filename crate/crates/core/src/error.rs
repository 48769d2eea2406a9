use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("objects belong to different groups")]
    GroupMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("product of the tuple is not the identity")]
    ProductNotIdentity,
    #[error("invalid monodromy datum: {0}")]
    InvalidDatum(String),
    #[error("no honesty certificate: {0}")]
    MissingCertificate(String),
    #[error("operation requires a proper model: {0}")]
    NonProper(String),
    #[error("incomplete character table: {0}")]
    IncompleteTable(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
