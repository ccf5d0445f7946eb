use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal digits used when nothing else is requested.
pub const DEFAULT_PRECISION: u32 = 15;

pub const PRECISION_ENV: &str = "JONESCOPE_PRECISION";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything needed to rerun a command; embedded in every output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    /// Arguments after the program name, as given.
    pub argv: Vec<String>,
    pub precision_digits: u32,
    pub threads: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    /// Working precision in bits for the requested decimal digits.
    pub fn precision_bits(&self) -> u32 {
        (self.precision_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
    }
}

/// Flag value, then the environment, then the default.
pub fn resolve_precision(flag: Option<u32>) -> anyhow::Result<u32> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("{PRECISION_ENV}={v:?} is not a digit count")),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
