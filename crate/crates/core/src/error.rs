use std::path::PathBuf;

/// Errors surfaced by the library and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("propagation error: {0}")]
    Propagation(String),

    #[error("decision error: {0}")]
    Decision(String),

    #[error("report error: {0}")]
    Report(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short category name used for command-line exit messages.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Evaluation(_) => "evaluation",
            Error::Propagation(_) => "propagation",
            Error::Decision(_) => "decision",
            Error::Report(_) => "report",
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => "io",
        }
    }

    /// Process exit code for this error category.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Evaluation(_) | Error::Propagation(_) => 3,
            Error::Decision(_) => 4,
            Error::Report(_) => 5,
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => 6,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
