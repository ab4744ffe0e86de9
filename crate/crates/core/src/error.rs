use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial degree {0} is outside the supported range 1..=10")]
    UnsupportedDegree(usize),

    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),

    #[error("a periodic mesh needs at least 3 cells, got {0}")]
    TooFewCells(usize),

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite solution value at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    #[error("unknown case id {0} (expected 1..=6)")]
    UnknownCase(u32),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Cli(#[from] clap::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Cli(e) if !e.use_stderr() => 0,
            Error::Cli(_) | Error::Config(_) | Error::UnknownCase(_) => 2,
            _ => 1,
        }
    }
}
