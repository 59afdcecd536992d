use thiserror::Error;

use crate::scenario::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scenario: {}", format_violations(.0))]
    InvalidScenario(Vec<Violation>),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),

    #[error("invalid quantum input: {0}")]
    InvalidQuantum(String),

    #[error("inconsistent marginal targets: {0}")]
    InconsistentTargets(String),

    #[error("context {context} has {size} events; marginal tables support at most {max}")]
    ContextTooLarge { context: usize, size: usize, max: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program did not converge within {0} pivots")]
    IterationLimit(usize),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
