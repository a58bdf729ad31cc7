use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("model `{model_id}`, row {row}: {message}")]
    InvalidMatrix {
        model_id: String,
        row: usize,
        message: String,
    },

    #[error("{}: no samples", path.display())]
    NoSamples { path: PathBuf },

    #[error("sample `{sample_id}` missing from {source_name}")]
    MissingSample {
        sample_id: String,
        source_name: String,
    },

    #[error("class count mismatch: model `{model_id}` has {found} classes, expected {expected}")]
    ClassCountMismatch {
        model_id: String,
        expected: usize,
        found: usize,
    },

    #[error("label {label} of sample `{sample_id}` is outside [0, {classes})")]
    LabelOutOfRange {
        sample_id: String,
        label: usize,
        classes: usize,
    },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("sample ids of predictions and labels differ at position {position}")]
    IdMismatch { position: usize },

    #[error("objective requires the validation split")]
    SplitMismatch,

    #[error("metrics need at least one sample")]
    EmptyConfusion,

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("grid of {points} points exceeds the evaluation budget of {budget}")]
    BudgetExceeded { points: usize, budget: usize },

    #[error("method `{method}` failed: {source}")]
    MethodFailed {
        method: String,
        #[source]
        source: Box<Error>,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("class {0} has no samples")]
    EmptyClass(usize),

    #[error("translation of sample `{sample_id}` failed: {message}")]
    Translation { sample_id: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Whether the failure came from the filesystem rather than the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }

    /// Process exit status: 2 for I/O and usage problems, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Usage(_) | Error::Manifest(_) => 2,
            Error::MethodFailed { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}
