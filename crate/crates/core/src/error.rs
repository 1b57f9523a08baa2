use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A witness index set is finite, so the witness is not an A∞ witness.
    #[error("not an A-infinity witness: index set {position} is finite")]
    FiniteIndexSet { position: u64 },

    /// A precondition of a construction does not hold for the given data.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A distrusted input (oracle output, witness) failed re-verification.
    #[error("verification failed: {0}")]
    Violation(String),

    /// A bounded search ran out of room before deciding.
    #[error("undecided at horizon {horizon}: {reason}")]
    Horizon { reason: String, horizon: u64 },

    /// Enforced size caps on exhaustive checks.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::Violation(msg.into())
    }
}
