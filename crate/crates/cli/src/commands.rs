use serde_json::{json, Value};
use summatoria::empirical::{
    empirical_cdf, empirical_moments, independence_table, ks_distance, Reference,
};
use summatoria::limit::{assertion4_check, euler_maclaurin_gap, full_verdict, ClassifierParams};
use summatoria::synth::{realize_greedy, schedule_summatory};
use summatoria::trace::{format_float, summatory_trace};
use summatoria::{Error, Trace};

use crate::config::{Format, FunctionId, Mode, RunConfig, Target};
use crate::CliError;

/// Trace of the realized sequence, or of the schedule's expectation with
/// `--expected`.
fn trace_for(config: &RunConfig, id: &FunctionId, n: u64) -> Result<(Trace, f64), CliError> {
    let c = config.checkpoints(n)?;
    if config.expected.unwrap_or(false) {
        let s = id
            .schedule()
            .ok_or_else(|| CliError::invalid("--expected needs a synth: function"))?;
        let bound = s.values().iter().fold(0.0f64, |m, a| m.max(a.abs()));
        return Ok((Trace::from_fn(c, |k| schedule_summatory(&s, k)), bound));
    }
    let f = id.sequence(config, n)?;
    let bound = f.magnitude_bound();
    Ok((summatory_trace(&f, n, &c)?, bound))
}

pub fn compute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let id = config.function()?;
    let n = config.n()?;
    let (trace, _) = trace_for(config, &id, n)?;
    match config.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(trace.to_csv_string().into_bytes()),
        Format::Json => {
            let values: Vec<Value> = match trace.exact_values() {
                Some(v) => v.iter().map(|&s| json!(s)).collect(),
                None => trace.values().into_iter().map(|s| json!(s)).collect(),
            };
            let doc = json!({
                "function": config.function,
                "N": n,
                "checkpoints": trace.checkpoints(),
                "kind": trace.kind(),
                "S": values,
            });
            pretty(&doc)
        }
    }
}

pub fn verdict(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    if config.format == Some(Format::Csv) {
        return Err(CliError::invalid("verdict output is JSON only"));
    }
    let id = config.function()?;
    let n = config.n()?;
    let label = config.function.clone().unwrap_or_default();
    match config.mode.unwrap_or(Mode::Full) {
        Mode::Full => {
            if config.expected.unwrap_or(false) {
                return Err(CliError::invalid(
                    "--expected applies to the assertion4 mode only",
                ));
            }
            let f = id.sequence(config, n)?;
            let c = config.checkpoints(n)?;
            let v = full_verdict(&f, n, &c, &Default::default())?.with_function(label);
            Ok(with_newline(v.to_json()?))
        }
        Mode::Assertion4 => {
            let (trace, bound) = trace_for(config, &id, n)?;
            let v =
                assertion4_check(&trace, bound, &ClassifierParams::default())?.with_function(label);
            Ok(with_newline(v.to_json()?))
        }
        Mode::Gap => {
            let form = id
                .closed_form()
                .ok_or_else(|| CliError::invalid("gap mode needs a closed-form function"))?;
            let c = config.checkpoints(n)?;
            let fit = euler_maclaurin_gap(&form, n, &c, &ClassifierParams::default())?;
            pretty(&json!({
                "function": label,
                "N": n,
                "checkpoints": fit.checkpoints,
                "remainders": fit.remainders,
                "class": fit.class,
                "slope": fit.loglog_slope,
                "stderr": fit.slope_stderr,
                "notes": fit.warnings.join("; "),
            }))
        }
    }
}

pub fn analyze(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let id = config.function()?;
    let n = config.n()?;
    let c = config.checkpoints(n)?;
    let lags = config.lags()?;
    let reach = n + lags.iter().copied().max().unwrap_or(0);
    let f = id.sequence(config, reach)?;
    let table = independence_table(&f, c.as_slice(), &lags)?;
    match config.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut out = String::from("n,lag,rho\n");
            for row in &table {
                out.push_str(&format!(
                    "{},{},{}\n",
                    row.n,
                    row.lag,
                    format_float(row.rho)
                ));
            }
            Ok(out.into_bytes())
        }
        Format::Json => {
            let moments = empirical_moments(&f, n)?;
            let mut notes = Vec::new();
            let dist = empirical_cdf(&f.values(1, n)?)?;
            let ks = match ks_distance(&dist, Reference::StandardNormal) {
                Ok(d) => Some(d),
                Err(Error::DegenerateSample(why)) => {
                    notes.push(why);
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let rows: Vec<Value> = table
                .iter()
                .map(|r| json!({"n": r.n, "lag": r.lag, "rho": r.rho}))
                .collect();
            pretty(&json!({
                "function": config.function,
                "N": n,
                "mean": moments.mean,
                "variance": moments.variance,
                "ks_normal": ks,
                "independence": rows,
                "notes": notes.join("; "),
            }))
        }
    }
}

pub fn synth(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let id = config.function()?;
    let s = id
        .schedule()
        .ok_or_else(|| CliError::invalid("synth needs synth:log, synth:log2 or synth:coin"))?;
    match config.format.unwrap_or(Format::Csv) {
        Format::Json => Ok(with_newline(s.to_json()?)),
        Format::Csv => {
            let n = config.n()?;
            let target = config.target.unwrap_or(Target::Proportion);
            let f = realize_greedy(&s, n, target.into())?;
            let mut out = Vec::new();
            f.write_csv(n, &mut out)?;
            Ok(out)
        }
    }
}

fn pretty(doc: &Value) -> Result<Vec<u8>, CliError> {
    let text = serde_json::to_string_pretty(doc).map_err(Error::from)?;
    Ok(with_newline(text))
}

fn with_newline(mut text: String) -> Vec<u8> {
    text.push('\n');
    text.into_bytes()
}
