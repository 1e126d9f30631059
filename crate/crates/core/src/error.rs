use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidType(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("node {0} is not a corner of the Dynkin diagram")]
    NotACorner(usize),
    #[error("weight {0} is not regular dominant")]
    NotRegular(String),
    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("lattice mismatch: {0} vs {1}")]
    LatticeMismatch(String, String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("not a product of irreducible characters: {0}")]
    NotAProduct(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, cap: u64) -> Self {
        Error::CapExceeded { what: what.into(), cap }
    }
}
