use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub max_n: usize,
    pub series_order: usize,
    pub cache_dir: Option<PathBuf>,
    pub output_format: Format,
    pub thread_count: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_n: 18,
            series_order: 64,
            cache_dir: None,
            output_format: Format::Plain,
            thread_count: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_n < 2 {
            return Err(CliError::Usage(format!("--max-n must be at least 2, got {}", self.max_n)));
        }
        if self.series_order < 4 {
            return Err(CliError::Usage(format!(
                "--order must be at least 4, got {}",
                self.series_order
            )));
        }
        if self.thread_count == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn check_n(&self, n: usize) -> Result<(), CliError> {
        if n > self.max_n {
            return Err(CliError::Usage(format!(
                "n = {n} exceeds --max-n {}; raise --max-n to allow it",
                self.max_n
            )));
        }
        Ok(())
    }
}
