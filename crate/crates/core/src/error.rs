use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, VibroError>;

#[derive(Debug, Error)]
pub enum VibroError {
    /// A configuration field failed validation.
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate distribution for `{parameter}`: no positive draw in {attempts} attempts")]
    DegenerateDistribution { parameter: &'static str, attempts: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("integration became non-finite in mode {mode} at step {step}")]
    Integration { mode: usize, step: usize },

    #[error("non-finite input at index {0}")]
    NonFinite(usize),

    #[error("wavelet `{0}` is not a shipped family")]
    UnknownWavelet(String),

    #[error("decomposition level {requested} too deep for length {length} (max {max})")]
    LevelTooDeep { requested: usize, length: usize, max: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("undefined metric: {0}")]
    UndefinedMetric(&'static str),

    #[error("bad magic in {path}: expected {expected:?}")]
    BadMagic { path: PathBuf, expected: &'static str },

    #[error("format version mismatch: file has {found}, reader supports {supported}")]
    VersionMismatch { found: u32, supported: u32 },

    #[error("payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: u64, found: u64 },

    #[error("manifest/payload mismatch: {0}")]
    ManifestMismatch(String),

    #[error("checkpoint does not match model config: {0}")]
    CheckpointMismatch(String),

    #[error("non-finite loss at iteration {iteration} in term `{term}`")]
    NonFiniteLoss { iteration: usize, term: &'static str },

    #[error("non-finite activation in {0}")]
    NonFiniteActivation(&'static str),

    #[error("unknown method `{given}`; valid methods: {valid}")]
    UnknownMethod { given: String, valid: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl VibroError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        VibroError::Config { field: field.into(), reason: reason.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        VibroError::Io { path: path.into(), source }
    }

    /// True for errors caused by bad user input rather than a runtime failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            VibroError::Config { .. }
                | VibroError::InvalidArgument(_)
                | VibroError::UnknownWavelet(_)
                | VibroError::LevelTooDeep { .. }
                | VibroError::UnknownMethod { .. }
                | VibroError::CheckpointMismatch(_)
                | VibroError::Shape(_)
        )
    }
}
