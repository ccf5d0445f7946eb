//! Command-line front end for `jonescope-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod parallel;
pub mod suites;

use std::path::Path;

use anyhow::{bail, Context};
use clap::Parser;

use cli::{Cli, Command};
use config::{default_threads, resolve_precision, Format, RunConfig};
use output::Outcome;

/// Builds the configuration of a parsed command line.
pub fn configure(cli: &Cli, argv: Vec<String>) -> anyhow::Result<RunConfig> {
    let format = if cli.json { Format::Json } else { cli.out.unwrap_or(Format::Json) };
    Ok(RunConfig {
        command: cli.command.name().to_string(),
        argv,
        precision_digits: resolve_precision(cli.precision)?,
        threads: cli.threads.unwrap_or_else(default_threads),
        format,
        output: cli.output.clone(),
        csv: cli.csv.clone(),
    })
}

/// Reads the configuration embedded in a JSON output, a CSV file, or a bare
/// configuration object.
pub fn embedded_config(path: &Path) -> anyhow::Result<RunConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# config: ") {
            return Ok(serde_json::from_str(rest)?);
        }
    }
    let v: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let config = v.get("config").cloned().unwrap_or(v);
    serde_json::from_value(config).context("no run configuration found")
}

/// Parses, runs and emits one command line (program name excluded).
pub fn run_args(argv: Vec<String>) -> anyhow::Result<(RunConfig, Outcome)> {
    let cli = Cli::try_parse_from(std::iter::once("jonescope".to_string()).chain(argv.iter().cloned()))?;
    if let Command::Replay { file } = &cli.command {
        let config = embedded_config(file)?;
        if config.command == "replay" {
            bail!("{} records a replay; replay the original run instead", file.display());
        }
        return run_args(config.argv);
    }
    let config = configure(&cli, argv)?;
    parallel::init_threads(config.threads);
    let outcome = commands::run(&cli.command, &config)?;
    outcome.emit(&config)?;
    Ok((config, outcome))
}
