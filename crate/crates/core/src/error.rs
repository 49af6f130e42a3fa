use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data referenced an identifier that does not exist.
    #[error("unknown {kind} `{name}`")]
    UnknownId { kind: &'static str, name: String },

    /// Input data failed its validator.
    #[error("invalid {what}: {report}")]
    Invalid {
        what: &'static str,
        report: ValidationReport,
    },

    /// Two structures that must share a boundary do not.
    #[error("boundary mismatch: {0}")]
    Mismatch(String),

    /// A construction produced the same identifier twice.
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    /// The operation requires a property the input does not have.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Bounded saturation exceeded its limits; the result may be infinite.
    #[error("undecided: {0}")]
    Undecided(String),

    /// A round-trip witness failed to verify. This indicates a bug.
    #[error("witness verification failed: {0}")]
    Witness(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(what: &'static str, report: ValidationReport) -> Self {
        Error::Invalid { what, report }
    }
}
