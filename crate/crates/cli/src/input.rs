use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn parse(e: impl std::fmt::Display) -> Self {
        CliError::Parse(e.to_string())
    }

    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Inline JSON when the argument opens with `{` or `[`, otherwise a path.
pub fn load(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn json<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let raw = load(arg)?;
    serde_json::from_str(&raw).map_err(CliError::parse)
}
