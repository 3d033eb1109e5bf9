use thiserror::Error;

/// Errors raised by the compute modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    /// An enumeration would exceed its hard size limit.
    #[error("guard exceeded for {what}: estimated size {estimate} > limit {limit}")]
    Guard {
        what: String,
        estimate: u128,
        limit: u128,
    },

    #[error("matrix is singular (rank {rank} < {dim})")]
    Singular { rank: usize, dim: usize },

    #[error("incompatible operands: {0}")]
    Mismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn guard(what: impl Into<String>, estimate: u128, limit: u128) -> Self {
        Error::Guard {
            what: what.into(),
            estimate,
            limit,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}

/// Refuse with a size report when `estimate` exceeds `limit`.
pub(crate) fn check_guard(what: &str, estimate: u128, limit: u128) -> Result<()> {
    if estimate > limit {
        Err(Error::guard(what, estimate, limit))
    } else {
        Ok(())
    }
}
