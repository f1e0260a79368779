use thiserror::Error;

use crate::io::ParseError;
use crate::meter::Stats;

#[derive(Debug, Error)]
pub enum Error {
    /// The deadline passed before the algorithm finished. Carries the
    /// meter readings at the moment of the check.
    #[error("deadline exceeded after {} time units", .0.time)]
    Timeout(Stats),
    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("{vars} variables exceed the enumeration limit of {limit}")]
    GuardExceeded { vars: usize, limit: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
