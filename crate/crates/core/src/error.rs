use std::fmt;

use crate::spectrum::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("enumeration limit exceeded: {what} (limit {limit})")]
    EnumerationLimit { what: String, limit: u64 },

    #[error("{0}")]
    InvalidTree(ValidationReport),

    #[error("unknown node id `{0}`")]
    UnknownNode(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("interpolation check failed at {point:?}: polynomial gives {interpolated}, evaluator gives {expected}")]
    InconsistentEvaluator {
        point: Vec<(String, i64)>,
        interpolated: String,
        expected: String,
    },

    #[error("count does not fit in 128 bits")]
    Overflow,

    #[error("omega segment is empty")]
    EmptySegment,

    #[error("malformed tree description: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn limit(what: impl Into<String>, limit: u64) -> Self {
        Error::EnumerationLimit {
            what: what.into(),
            limit,
        }
    }
}

/// Every invariant a raw tree description violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid spectrum tree:")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}
