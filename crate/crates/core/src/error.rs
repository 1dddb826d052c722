use thiserror::Error;

use crate::configurations::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type `{input}`: {reason}")]
    InvalidCartanType { input: String, reason: String },

    #[error("invalid parabolic subset: {0}")]
    InvalidParabolic(String),

    #[error("{what} has {size} entries, exceeding the cap of {cap} (raise it with --cap or MOTIVE_FORGE_CAP)")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: usize,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("negative twist {0} has no polynomial class")]
    NegativeTwist(i64),

    #[error("not pure Tate: term Z({twist})[{shift}] with multiplicity {mult}")]
    NotPure { twist: i64, shift: i64, mult: i64 },

    #[error("invalid fiber: {0}")]
    InvalidFiber(String),

    #[error("invalid cell decomposition: {0}")]
    InvalidCells(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(ValidationReport),

    #[error("{0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}
