use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the channel, device and engine layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("link endpoints coincide")]
    ZeroDistance,
    #[error("rotation axes and angles differ in length ({axes} vs {angles})")]
    LengthMismatch { axes: usize, angles: usize },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),
    #[error("every link contribution is suppressed")]
    AllLinksSuppressed,
    #[error("probability {0} outside (0, 1)")]
    OutOfDomain(f64),
    #[error("no crossover between outage branches for epsilon {0}")]
    NoCrossover(f64),
    #[error("empty patch schedule")]
    EmptySchedule,
    #[error("serving policy has no pairs or slots")]
    EmptyPolicy,
    #[error("{policies} serving policies for {patches} patches")]
    PolicyCountMismatch { patches: usize, policies: usize },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("invalid configuration:\n{}", format_config_errors(.0))]
    Config(Vec<ConfigError>),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// One configuration problem, located by a JSON pointer into the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub pointer: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pointer = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{pointer}: {}", self.message)
    }
}

fn format_config_errors(errors: &[ConfigError]) -> String {
    errors.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.into(),
            message: err.to_string(),
        }
    }
}
