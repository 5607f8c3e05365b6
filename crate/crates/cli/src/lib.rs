// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line driver: configuration loading, run dispatch, sweeps and
//! output files.
//!
//! Exit codes: 0 success, 1 invalid configuration or arguments, 2 numerical
//! failure (a `diagnostic.json` is written next to the outputs).

pub mod config;
pub mod error;
pub mod output;
pub mod runs;
pub mod sweep;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::LoadedConfig;
use crate::error::CliError;
use crate::output::{write_diagnostic, Artifacts};

#[derive(Debug, Parser)]
#[command(name = "edjcm", version, about = "Three-level maser thermodynamics simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute the configuration's mode once.
    Run(CommonArgs),
    /// Execute every point of the configuration's sweep axes.
    Sweep(CommonArgs),
    /// Quantum versus semiclassical steady-state fluxes.
    Compare(CommonArgs),
    /// Recompute the reference values and check them against the bundled baselines.
    Reproduce(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output.dir`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    /// Reserved: nothing in the simulator is stochastic. Recorded in the manifest.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Dotted key and TOML value, e.g. `model.lambda=0.5`. Repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

const COMPARE_DEFAULT: &str = "mode = \"compare\"\n\n[integration]\nstep_h = 0.05\n";
const REPRODUCE_DEFAULT: &str = "mode = \"reproduce\"\n\n[integration]\nstep_h = 0.05\nt_final = 300.0\n";

fn load(args: &CommonArgs, default_text: Option<&str>, forced_mode: Option<&str>) -> Result<LoadedConfig, CliError> {
    let (text, origin) = match (&args.config, default_text) {
        (Some(path), _) => (
            std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        (None, Some(t)) => (t.to_string(), "<default>".to_string()),
        (None, None) => return Err(CliError::Validation("--config is required".into())),
    };
    let mut overrides = Vec::new();
    if let Some(m) = forced_mode {
        overrides.push(format!("mode=\"{m}\""));
    }
    overrides.extend(args.overrides.iter().cloned());
    let mut loaded = LoadedConfig::parse(&text, &origin, &overrides)?;
    if let Some(out) = &args.out {
        loaded.config.output.dir = out.clone();
    }
    Ok(loaded)
}

/// Writes outputs and, for a failure, the diagnostic. Returns the error to report.
fn finish(dir: &Path, echo: &str, seed: Option<u64>, artifacts: Option<&Artifacts>, failure: Option<CliError>) -> Result<(), CliError> {
    if let Some(a) = artifacts {
        a.write(dir, echo, seed)?;
    }
    match failure {
        None => Ok(()),
        Some(e) => {
            if e.exit_code() == 2 {
                write_diagnostic(dir, &e, echo)?;
            }
            Err(e)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<PathBuf, CliError> {
    let (args, loaded, is_sweep) = match &cli.command {
        Command::Run(a) => (a, load(a, None, None)?, false),
        Command::Sweep(a) => (a, load(a, None, None)?, true),
        Command::Compare(a) => (a, load(a, Some(COMPARE_DEFAULT), a.config.as_ref().map(|_| "compare"))?, false),
        Command::Reproduce(a) => (a, load(a, Some(REPRODUCE_DEFAULT), a.config.as_ref().map(|_| "reproduce"))?, false),
    };
    if is_sweep && loaded.config.sweep.is_empty() {
        return Err(CliError::Validation("sweep: the configuration has no [[sweep]] axes".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Io(e.to_string()))?;
    let dir = loaded.config.output.dir.clone();
    let echo = loaded.echo();
    pool.install(|| {
        if is_sweep {
            let (artifacts, failures) = match sweep::run_sweep(&loaded) {
                Ok(x) => x,
                Err(e) => return finish(&dir, &echo, args.seed, None, Some(e)),
            };
            let failure = (!failures.is_empty()).then(|| CliError::Numerical {
                message: format!("{} sweep point(s) failed: {}", failures.len(), failures.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")),
                details: serde_json::Value::Array(
                    failures.iter().map(|(n, e)| serde_json::json!({"point": n, "error": e.to_string()})).collect(),
                ),
            });
            finish(&dir, &echo, args.seed, Some(&artifacts), failure)
        } else {
            match runs::execute(&loaded.config) {
                Ok(r) => finish(&dir, &echo, args.seed, Some(&r.artifacts), r.failure),
                Err(e) => finish(&dir, &echo, args.seed, None, Some(e)),
            }
        }
    })?;
    Ok(dir)
}

/// Parses `argv` and runs it; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(dir) => {
            eprintln!("wrote {}", dir.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
