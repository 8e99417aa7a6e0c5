use crate::group::Family;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("family mismatch: expected {expected}, got {found}")]
    FamilyMismatch { expected: Family, found: Family },

    #[error("alphabet mismatch: {left} vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("{what} is not supported for {family} groups")]
    Unsupported { what: &'static str, family: Family },

    #[error("size cap exceeded: {what} needs {required} entries, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: usize,
    },

    #[error("{0}")]
    Domain(String),

    #[error("oracle fault: {0}")]
    OracleFault(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),

    #[error("probe {index} is not a member of the subshift")]
    InvalidProbe { index: usize },

    #[error("composite rule left the subshift on probe {index}")]
    ClosureWitness { index: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
