use thiserror::Error;

/// Errors surfaced by the exact pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid elimination: {0}")]
    InvalidElimination(String),
    #[error("root isolation failed: {0}")]
    IsolationFailure(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("inconsistent branch set: {0}")]
    InconsistentBranchSet(String),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("stale ladder: {0}")]
    StaleLadder(String),
    #[error("clustering error: {0}")]
    ClusteringError(String),
    #[error("invalid trunk: {0}")]
    InvalidTrunk(String),
    #[error("parse error at {position}: {message} (expected {expected})")]
    Parse {
        position: usize,
        message: String,
        expected: String,
    },
    #[error("unknown variable '{name}' at {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("root of unity of order {0} needed below the current tower")]
    RootOfUnityNeeded(u64),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Module that raised the error, for user-facing reports.
    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidElimination(_) | Error::IsolationFailure(_) | Error::RootOfUnityNeeded(_) => "algebra",
            Error::EmptyInput(_) | Error::InconsistentBranchSet(_) => "puiseux",
            Error::TruncationTooShort(_) => "puiseux",
            Error::HypothesisViolation(_) => "geometry",
            Error::StaleLadder(_) => "carrousel",
            Error::ClusteringError(_) | Error::InvalidTrunk(_) => "assembly",
            Error::Parse { .. } | Error::UnknownVariable { .. } => "cli",
            Error::Internal(_) => "internal",
        }
    }

    /// Short remediation hint.
    pub fn hint(&self) -> &'static str {
        match self {
            Error::TruncationTooShort(_) => "raise --truncation",
            Error::HypothesisViolation(_) => "check that f is reduced with a 1-dimensional singular locus, or pass --shear",
            Error::Parse { .. } | Error::UnknownVariable { .. } => "use x, y, z, integers, + - * / ^ and parentheses",
            Error::InvalidTrunk(_) => "the trunk file must list as many boundary tori as the vanishing zone has",
            Error::IsolationFailure(_) => "the input may need a shear to separate roots",
            Error::ClusteringError(_) => "suns could not be separated numerically; try --shear or a higher --truncation",
            _ => "please report this input",
        }
    }
}
