//! Crate-wide error type.
//!
//! Variants are grouped by the failure class the CLI maps to exit codes:
//! rejected inputs, undefined conditionals (zero ABL denominator), and
//! nonexistent closest worlds.

use thiserror::Error;

use crate::worlds::SphereViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("state is not normalized: |norm² − 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("observable `{name}`: eigenvectors {i} and {j} are not orthogonal (|⟨{i}|{j}⟩| = {overlap:.3e})")]
    NotOrthogonal {
        name: String,
        i: usize,
        j: usize,
        overlap: f64,
    },

    #[error("observable `{name}`: duplicate outcome label `{label}`")]
    DuplicateLabel { name: String, label: String },

    #[error("observable `{name}`: {vectors} eigenvectors and {labels} labels for dimension {dim}")]
    MalformedObservable {
        name: String,
        vectors: usize,
        labels: usize,
        dim: usize,
    },

    #[error("outcome index {index} out of range for dimension {dim}")]
    OutcomeOutOfRange { index: usize, dim: usize },

    #[error("unknown outcome label `{0}`")]
    UnknownLabel(String),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("unknown world id `{0}`")]
    UnknownWorld(String),

    #[error("collapse onto `{label}` is impossible (probability {probability:.3e})")]
    ImpossibleCollapse { label: String, probability: f64 },

    #[error("timeline must satisfy t1 < t < t2 (got {t1}, {t}, {t2})")]
    UnorderedTimeline { t1: f64, t: f64, t2: f64 },

    /// The ABL conditional is undefined: post-selection is impossible for
    /// every intermediate outcome.
    #[error("conditional undefined: no intermediate outcome is compatible with both selections (denominator {denominator:.3e})")]
    UndefinedConditional { denominator: f64 },

    #[error("tolerance {0:.3e} outside (0, 1e-6]")]
    InvalidTolerance(f64),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid sphere system ({} violation(s), first: {})", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidSpheres(Vec<SphereViolation>),

    /// The stipulating similarity relation has no world to stipulate:
    /// no accessible antecedent world satisfies the premise.
    #[error("closest world does not exist: {0}")]
    ClosestWorldNonexistent(String),

    #[error("no data: {0}")]
    NoData(String),

    /// Scenario document failed schema-level parsing.
    #[error("scenario schema error: {0}")]
    Schema(String),

    /// Scenario document parsed but a field failed validation.
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
