use thiserror::Error;

use crate::density::ApproxResult;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed form produced a non-integral result; indicates a transcription bug.
    #[error("internal error: {0}")]
    Internal(String),

    /// A configured cap (group order, sieve bound) was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// The approximation ran out of primes before meeting the tolerance.
    #[error("approximation limits exhausted: {reason}")]
    Exhausted {
        reason: String,
        best: Box<ApproxResult>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
