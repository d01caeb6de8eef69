use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("grid of {grid} nodes undersamples a degree-{degree} polynomial (need at least {needed})")]
    Undersampled {
        grid: usize,
        degree: usize,
        needed: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("solver failed ({status}): {detail}")]
    Solver { status: String, detail: String },
    #[error("accuracy target missed: {0}")]
    Accuracy(String),
    #[error("structural violation: {0}")]
    Structure(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
