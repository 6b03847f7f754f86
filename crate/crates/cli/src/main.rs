use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod selftest;

use config::{Format, Mode, RunConfig, Target, DEFAULT_SEED};

/// Summatory arithmetic functions: traces, verdicts, synthetic sequences.
#[derive(Debug, Parser)]
#[command(name = "summatoria", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the summatory trace S(n) at each checkpoint (CSV `n,S`).
    Compute(Flags),
    /// Moments, KS distance and lag-correlation table.
    Analyze(Flags),
    /// Realize a synthetic schedule (CSV `k,f`) or export it (JSON).
    Synth(Flags),
    /// Limit-law verdict as JSON.
    Verdict(Flags),
    /// Run the built-in consistency suites.
    Selftest(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// mu | lambda | mu-over-k | harmonic | inverse-square | one | alternating |
    /// synth:log | synth:log2 | synth:coin | file:PATH
    #[arg(long)]
    function: Option<String>,
    #[arg(long = "N")]
    n: Option<u64>,
    /// `geometric(start,ratio)` or a comma-separated list
    #[arg(long)]
    checkpoints: Option<String>,
    /// Output path; stdout when absent
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for KS calibration draws
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Comma-separated lags (analyze only)
    #[arg(long)]
    lag: Option<String>,
    /// Greedy target for synthetic functions
    #[arg(long, value_enum)]
    target: Option<Target>,
    /// Verdict flavour
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Use a schedule's expected summatory values instead of a realization
    #[arg(long)]
    expected: bool,
    /// JSON config file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(RunConfig {
            function: self.function,
            n: self.n,
            checkpoints: self.checkpoints,
            output: self.output,
            format: self.format,
            seed: self.seed,
            threads: self.threads,
            lag: self.lag,
            target: self.target,
            mode: self.mode,
            expected: self.expected.then_some(true),
        }))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] summatoria::Error),
    #[error("selftest failed")]
    SelftestFailed,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Self::Invalid(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            Self::Core(e) if e.is_numeric() => 2,
            Self::SelftestFailed => 2,
            _ => 1,
        }
    }
}

fn emit(config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::invalid(format!("cannot write stdout: {e}"))),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    let (flags, name) = match command {
        Command::Compute(f) => (f, "compute"),
        Command::Analyze(f) => (f, "analyze"),
        Command::Synth(f) => (f, "synth"),
        Command::Verdict(f) => (f, "verdict"),
        Command::Selftest(f) => (f, "selftest"),
    };
    let config = flags.into_config()?;
    if config.lag.is_some() && name != "analyze" {
        return Err(CliError::invalid("--lag applies to analyze only"));
    }
    let bytes = match name {
        "compute" => commands::compute(&config)?,
        "analyze" => commands::analyze(&config)?,
        "synth" => commands::synth(&config)?,
        "verdict" => commands::verdict(&config)?,
        _ => {
            let sieve = config.sieve()?;
            let (report, passed) = selftest::run(&sieve, config.seed.unwrap_or(DEFAULT_SEED));
            emit(&config, report.as_bytes())?;
            return if passed {
                Ok(())
            } else {
                Err(CliError::SelftestFailed)
            };
        }
    };
    emit(&config, &bytes)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("summatoria: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
