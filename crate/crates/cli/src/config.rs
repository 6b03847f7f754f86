//! Run configuration: flags layered over an optional JSON file.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use summatoria::arith::{Sieve, SieveConfig};
use summatoria::empirical::{ArithmeticSequence, ClosedForm, SieveFunction};
use summatoria::synth::{fair_coin, paper_log2_example, paper_log_example, RealizationTarget};
use summatoria::trace::Checkpoints;
use summatoria::{Schedule, Sequence};

use crate::CliError;

pub const BLOCK_SIZE_VAR: &str = "SUMMATORIA_BLOCK_SIZE";
pub const DEFAULT_SEED: u64 = 20_181_130;
/// Domain cap for closed-form functions.
const CLOSED_FORM_BOUND: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Proportion,
    Cumulative,
}

impl From<Target> for RealizationTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::Proportion => RealizationTarget::Proportion,
            Target::Cumulative => RealizationTarget::Cumulative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// mean estimate, remainder fits and KS trace
    Full,
    /// mean forced to 0, S(n) itself must decay
    Assertion4,
    /// sum minus integral from 1 (closed-form functions)
    Gap,
}

/// Every field is optional so a config file and flags can be merged.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub function: Option<String>,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub checkpoints: Option<String>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub lag: Option<String>,
    pub target: Option<Target>,
    pub mode: Option<Mode>,
    /// Use the schedule's expected values instead of a realization.
    pub expected: Option<bool>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `flags` win.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            function: flags.function.or(self.function),
            n: flags.n.or(self.n),
            checkpoints: flags.checkpoints.or(self.checkpoints),
            output: flags.output.or(self.output),
            format: flags.format.or(self.format),
            seed: flags.seed.or(self.seed),
            threads: flags.threads.or(self.threads),
            lag: flags.lag.or(self.lag),
            target: flags.target.or(self.target),
            mode: flags.mode.or(self.mode),
            expected: flags.expected.or(self.expected),
        }
    }

    pub fn function(&self) -> Result<FunctionId, CliError> {
        let id = self
            .function
            .as_deref()
            .ok_or_else(|| CliError::invalid("--function is required"))?;
        FunctionId::parse(id)
    }

    pub fn n(&self) -> Result<u64, CliError> {
        match self.n {
            Some(0) => Err(CliError::invalid("--N must be positive")),
            Some(n) => Ok(n),
            None => Err(CliError::invalid("--N is required")),
        }
    }

    pub fn checkpoints(&self, n: u64) -> Result<Checkpoints, CliError> {
        let spec = self.checkpoints.as_deref().unwrap_or("geometric(10,2)");
        parse_checkpoints(spec, n)
    }

    pub fn threads(&self) -> Result<usize, CliError> {
        match self.threads.unwrap_or(1) {
            0 => Err(CliError::invalid("--threads must be positive")),
            t => Ok(t),
        }
    }

    pub fn lags(&self) -> Result<Vec<u64>, CliError> {
        match self.lag.as_deref() {
            None => Ok(summatoria::empirical::DEFAULT_LAGS.to_vec()),
            Some(text) => text
                .split(',')
                .map(|s| match s.trim().parse::<u64>() {
                    Ok(h) if h > 0 => Ok(h),
                    _ => Err(CliError::invalid(format!("--lag: bad lag {s:?}"))),
                })
                .collect(),
        }
    }

    pub fn sieve(&self) -> Result<Arc<Sieve>, CliError> {
        let mut config = SieveConfig {
            threads: self.threads()?,
            ..Default::default()
        };
        if let Ok(raw) = std::env::var(BLOCK_SIZE_VAR) {
            config.block_size = match raw.trim().parse::<usize>() {
                Ok(b) if b > 0 => b,
                _ => {
                    return Err(CliError::invalid(format!(
                        "{BLOCK_SIZE_VAR}: expected a positive integer, got {raw:?}"
                    )))
                }
            };
        }
        Ok(Arc::new(Sieve::new(config)?))
    }
}

/// `geometric(start, ratio)` or a comma-separated list, all `<= n`.
pub fn parse_checkpoints(spec: &str, n: u64) -> Result<Checkpoints, CliError> {
    let spec = spec.trim();
    let bad = |why: &str| CliError::invalid(format!("--checkpoints {spec:?}: {why}"));
    if let Some(args) = spec
        .strip_prefix("geometric(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let (start, ratio) = args
            .split_once(',')
            .ok_or_else(|| bad("expected geometric(start, ratio)"))?;
        let start: u64 = start
            .trim()
            .parse()
            .map_err(|_| bad("start is not an integer"))?;
        let ratio: f64 = ratio
            .trim()
            .parse()
            .map_err(|_| bad("ratio is not a number"))?;
        if start == 0 || start > n {
            return Err(bad("start must lie in 1..=N"));
        }
        if ratio.is_nan() || ratio <= 1.0 {
            return Err(bad("ratio must exceed 1"));
        }
        return Checkpoints::geometric(start, ratio, n).map_err(|e| bad(&e.to_string()));
    }
    let points = spec
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad("expected geometric(start, ratio) or a list of integers"))?;
    if points.iter().any(|&p| p > n) {
        return Err(bad("checkpoint exceeds N"));
    }
    Checkpoints::explicit(points).map_err(|e| bad(&e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionId {
    Mu,
    Lambda,
    MuOverK,
    Harmonic,
    InverseSquare,
    One,
    Alternating,
    SynthLog,
    SynthLog2,
    SynthCoin,
    File(PathBuf),
}

impl FunctionId {
    pub fn parse(id: &str) -> Result<Self, CliError> {
        Ok(match id {
            "mu" => Self::Mu,
            "lambda" => Self::Lambda,
            "mu-over-k" => Self::MuOverK,
            "harmonic" => Self::Harmonic,
            "inverse-square" => Self::InverseSquare,
            "one" => Self::One,
            "alternating" => Self::Alternating,
            "synth:log" => Self::SynthLog,
            "synth:log2" => Self::SynthLog2,
            "synth:coin" => Self::SynthCoin,
            _ => match id.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Self::File(path.into()),
                _ => {
                    return Err(CliError::invalid(format!(
                        "unknown function {id:?} (expected mu, lambda, mu-over-k, harmonic, \
                         inverse-square, one, alternating, synth:log, synth:log2, synth:coin or file:PATH)"
                    )))
                }
            },
        })
    }

    pub fn schedule(&self) -> Option<Schedule> {
        match self {
            Self::SynthLog => Some(paper_log_example()),
            Self::SynthLog2 => Some(paper_log2_example()),
            Self::SynthCoin => Some(fair_coin()),
            _ => None,
        }
    }

    pub fn closed_form(&self) -> Option<ClosedForm<f64>> {
        match self {
            Self::Harmonic => Some(ClosedForm::reciprocal()),
            Self::InverseSquare => Some(ClosedForm::inverse_square()),
            Self::One => Some(ClosedForm::constant(1.0)),
            Self::Alternating => Some(ClosedForm::alternating()),
            _ => None,
        }
    }

    /// Builds the sequence, materializing at least `len` terms where needed.
    pub fn sequence(&self, config: &RunConfig, len: u64) -> Result<Sequence, CliError> {
        let sieve_backed = |function| -> Result<Sequence, CliError> {
            Ok(ArithmeticSequence::sieve_backed(function, config.sieve()?))
        };
        let label = config.function.clone().unwrap_or_default();
        let seq = match self {
            Self::Mu => sieve_backed(SieveFunction::Mobius)?,
            Self::Lambda => sieve_backed(SieveFunction::Liouville)?,
            Self::MuOverK => sieve_backed(SieveFunction::MobiusOverK)?,
            Self::SynthLog | Self::SynthLog2 | Self::SynthCoin => {
                let target = config.target.unwrap_or(Target::Proportion);
                let schedule = self.schedule().expect("synthetic id has a schedule");
                summatoria::synth::realize_greedy(&schedule, len, target.into())?
            }
            Self::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
                ArithmeticSequence::read_csv(label.clone(), &text)?
            }
            _ => ArithmeticSequence::closed_form(
                self.closed_form().expect("remaining ids are closed forms"),
                CLOSED_FORM_BOUND,
            ),
        };
        Ok(seq.with_label(label))
    }
}
