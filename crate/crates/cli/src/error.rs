use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nilhecke::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed system file: {0}")]
    SystemFile(String),
    #[error("unknown system {0:?} (not a file and not a built-in)")]
    UnknownSystem(String),
    #[error("unknown generator {name:?}; generators are {known}")]
    UnknownGenerator { name: String, known: String },
    #[error("bad bitstring {0:?}: expected only 0 and 1")]
    BadBits(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("bad value for {name}: {message}")]
    BadEnv { name: String, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::SystemFile(_) => "SystemFile",
            CliError::UnknownSystem(_) => "UnknownSystem",
            CliError::UnknownGenerator { .. } => "UnknownGenerator",
            CliError::BadBits(_) => "BadBits",
            CliError::UnknownExample(_) => "UnknownExample",
            CliError::BadEnv { .. } => "BadEnv",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.code(), "detail": self.to_string() })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
