use thiserror::Error;

use crate::groups::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: Family, found: Family },

    #[error("unknown generator `{generator}` for family {family}")]
    UnknownGenerator { family: Family, generator: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element cap of {cap} exceeded while generating a ball of radius {radius}")]
    ResourceCap { cap: usize, radius: u32 },

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("descriptor is not a Conradian flip ordering: {0}")]
    NotConradian(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("incompatible quadratic fields: sqrt({0}) and sqrt({1})")]
    IncompatibleFields(u64, u64),

    #[error("non-faithful representation: {0}")]
    NonFaithful(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
