//! Mean-rate and asymptotic-form checks on a summatory trace, and the
//! combined verdict report.

use serde::{Deserialize, Serialize};

use crate::empirical::distribution::{ks_distance, EmpiricalDistribution, Reference};
use crate::empirical::sequence::ArithmeticSequence;
use crate::error::{Error, Result};
use crate::limit::gap::euler_maclaurin_gap;
use crate::limit::remainder::{
    classify_remainders, ClassifierParams, RemainderClass, RemainderFit,
};
use crate::trace::{scan_partial_sums, Checkpoints, SummatoryTrace};
use crate::Scalar;

/// Consecutive checkpoints closer than this ratio give unreliable slopes.
pub const MIN_GEOMETRIC_RATIO: f64 = 1.5;

/// Largest partial-sum sample fed to one KS evaluation.
pub const DEFAULT_KS_SAMPLE: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mu0Estimate<T> {
    /// `S(n_m)/n_m` at the largest checkpoint.
    pub value: T,
    /// `S(n_m)/n_m − S(n_{m−1})/n_{m−1}`.
    pub drift: T,
}

/// Estimates the limiting mean from the last checkpoint ratio.
pub fn estimate_mu0<T: Scalar>(trace: &SummatoryTrace<T>) -> Result<Mu0Estimate<T>> {
    let m = trace.len();
    if m < 4 {
        return Err(Error::argument(format!(
            "estimating the limiting mean needs at least 4 checkpoints, got {m}"
        )));
    }
    let ratio = |j: usize| trace.value(j) / T::from_count(trace.checkpoints().as_slice()[j]);
    let value = ratio(m - 1);
    Ok(Mu0Estimate {
        value,
        drift: value - ratio(m - 2),
    })
}

/// `S(n_j) − n_j·mu0` — both the scaled mean residual `n(M[f,n] − mu0)` and
/// the asymptotic-form residual.
pub fn remainders<T: Scalar>(trace: &SummatoryTrace<T>, mu0: T) -> Vec<T> {
    trace
        .points()
        .map(|(n, s)| s - T::from_count(n) * mu0)
        .collect()
}

/// Classifies the mean-rate residual `n·(S(n)/n − mu0)`.
pub fn mean_rate_fit<T: Scalar>(
    trace: &SummatoryTrace<T>,
    mu0: T,
    params: &ClassifierParams<T>,
) -> RemainderFit<T> {
    let mut fit = classify_remainders(
        trace.checkpoints().as_slice(),
        remainders(trace, mu0),
        params,
    );
    let ratio = trace.checkpoints().min_ratio();
    if ratio < MIN_GEOMETRIC_RATIO {
        fit.warnings.push(format!(
            "checkpoints are not geometric (smallest ratio {ratio:.3} < {MIN_GEOMETRIC_RATIO})"
        ));
    }
    fit
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsPoint {
    pub n: u64,
    #[serde(rename = "D")]
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitVerdict<T> {
    pub function: String,
    pub n: u64,
    pub checkpoints: Checkpoints,
    pub mu0_hat: T,
    pub mean_rate: RemainderFit<T>,
    pub asymptotic_form: RemainderFit<T>,
    /// KS distance of the self-standardized partial sums `{S(k): k <= n_j}`
    /// to the normal law. Reported only; never part of `conditions_met`.
    pub ks_trace: Vec<KsPoint>,
    pub conditions_met: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub class: RemainderClass,
    pub slope: Option<f64>,
    pub stderr: Option<f64>,
}

impl FitSummary {
    fn of<T: Scalar>(fit: &RemainderFit<T>) -> Self {
        Self {
            class: fit.class,
            slope: fit.loglog_slope.map(Scalar::to_f64_lossy),
            stderr: fit.slope_stderr.map(Scalar::to_f64_lossy),
        }
    }
}

/// Serialized form of [`LimitVerdict`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub function: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub checkpoints: Vec<u64>,
    pub mu0_hat: f64,
    pub mean_rate: FitSummary,
    pub asymptotic_form: FitSummary,
    pub ks_trace: Vec<KsPoint>,
    pub conditions_met: bool,
    pub notes: String,
}

impl<T: Scalar> LimitVerdict<T> {
    fn assemble(
        function: String,
        n: u64,
        trace: &SummatoryTrace<T>,
        mu0_hat: T,
        params: &ClassifierParams<T>,
        mut notes: Vec<String>,
    ) -> Self {
        let mean_rate = mean_rate_fit(trace, mu0_hat, params);
        // the asymptotic-form residual S(n) − n·mu0 is the same sequence
        let asymptotic_form = mean_rate.clone();
        let conditions_met = mean_rate.class == RemainderClass::Decaying
            && asymptotic_form.class == RemainderClass::Decaying;
        for w in &mean_rate.warnings {
            notes.push(format!("remainder fit: {w}"));
        }
        Self {
            function,
            n,
            checkpoints: trace.checkpoints().clone(),
            mu0_hat,
            mean_rate,
            asymptotic_form,
            ks_trace: Vec::new(),
            conditions_met,
            notes,
        }
    }

    pub fn with_function(mut self, label: impl Into<String>) -> Self {
        self.function = label.into();
        self
    }

    pub fn report(&self) -> VerdictReport {
        VerdictReport {
            function: self.function.clone(),
            n: self.n,
            checkpoints: self.checkpoints.as_slice().to_vec(),
            mu0_hat: self.mu0_hat.to_f64_lossy(),
            mean_rate: FitSummary::of(&self.mean_rate),
            asymptotic_form: FitSummary::of(&self.asymptotic_form),
            ks_trace: self.ks_trace.clone(),
            conditions_met: self.conditions_met,
            notes: self.notes.join("; "),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.report())?)
    }
}

/// Checks `S(n) → 0` for a function declared bounded by `bound`: the limiting
/// mean is forced to 0 and the conditions hold iff `S(n_j)` itself decays.
pub fn assertion4_check<T: Scalar>(
    trace: &SummatoryTrace<T>,
    bound: T,
    params: &ClassifierParams<T>,
) -> Result<LimitVerdict<T>> {
    if !(bound >= T::zero()) {
        return Err(Error::argument("magnitude bound must be non-negative"));
    }
    // |S(b) − S(a)| <= B·(b − a) must hold for every bounded f
    let slack = T::lit(1e-9);
    let mut prev = (0u64, T::zero());
    for (n, s) in trace.points() {
        let allowed = bound * T::from_count(n - prev.0);
        if (s - prev.1).abs() > allowed * (T::one() + slack) + slack {
            return Err(Error::argument(format!(
                "trace increment up to n = {n} is incompatible with |f| <= {bound}"
            )));
        }
        prev = (n, s);
    }
    let n = trace.checkpoints().last();
    let mut verdict = LimitVerdict::assemble(
        "trace".into(),
        n,
        trace,
        T::zero(),
        params,
        vec!["mu0 fixed at 0".into()],
    );
    verdict
        .notes
        .push("no partial-sum path available, ks_trace empty".into());
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerdictOptions<T> {
    pub classifier: ClassifierParams<T>,
    pub ks_max_sample: usize,
}

impl<T: Scalar> Default for VerdictOptions<T> {
    fn default() -> Self {
        Self {
            classifier: ClassifierParams::default(),
            ks_max_sample: DEFAULT_KS_SAMPLE,
        }
    }
}

/// Power-of-two stride keeping at most `max_sample` points of `1..=n`.
fn ks_stride_exponent(n: u64, max_sample: u64) -> u32 {
    let mut e = 0;
    while n >> e > max_sample {
        e += 1;
    }
    e
}

/// Streams `f` once up to the last checkpoint and assembles the verdict.
pub fn full_verdict<T: Scalar>(
    f: &ArithmeticSequence<T>,
    n: u64,
    checkpoints: &Checkpoints,
    options: &VerdictOptions<T>,
) -> Result<LimitVerdict<T>> {
    if options.ks_max_sample == 0 {
        return Err(Error::argument("KS sample limit must be positive"));
    }
    let max_sample = options.ks_max_sample as u64;
    let points = checkpoints.as_slice();
    let exponents: Vec<u32> = points
        .iter()
        .map(|&c| ks_stride_exponent(c, max_sample))
        .collect();
    // one buffer per stride level, long enough for its largest checkpoint
    let top = *exponents.iter().max().expect("checkpoints nonempty") as usize;
    let mut level_end = vec![0u64; top + 1];
    for (&c, &e) in points.iter().zip(&exponents) {
        level_end[e as usize] = level_end[e as usize].max(c);
    }
    let mut levels: Vec<Vec<T>> = level_end
        .iter()
        .enumerate()
        .map(|(e, &end)| Vec::with_capacity((end >> e) as usize))
        .collect();

    let trace = scan_partial_sums(f, n, checkpoints, |k, s| {
        for (e, level) in levels.iter_mut().enumerate() {
            if k <= level_end[e] && k & ((1u64 << e) - 1) == 0 {
                level.push(s);
            }
        }
    })?;

    let mut notes = Vec::new();
    let mu0 = estimate_mu0(&trace)?;
    notes.push(format!(
        "mu0 drift between last two checkpoints {:e}",
        mu0.drift.to_f64_lossy()
    ));
    let mut verdict = LimitVerdict::assemble(
        f.label().to_owned(),
        n,
        &trace,
        mu0.value,
        &options.classifier,
        notes,
    );

    for (&c, &e) in points.iter().zip(&exponents) {
        let sample = &levels[e as usize][..(c >> e) as usize];
        let d = EmpiricalDistribution::new(sample)
            .and_then(|dist| ks_distance(&dist, Reference::StandardNormal));
        match d {
            Ok(d) => verdict.ks_trace.push(KsPoint {
                n: c,
                d: d.to_f64_lossy(),
            }),
            Err(err) => verdict.notes.push(format!("ks at n = {c} skipped: {err}")),
        }
    }

    if let Some(form) = f.closed_form_source() {
        match euler_maclaurin_gap(form, n, checkpoints, &options.classifier) {
            Ok(gap) => verdict.notes.push(format!(
                "sum-minus-integral gap class {}, last value {:e}",
                gap.class.as_str(),
                gap.remainders
                    .last()
                    .copied()
                    .unwrap_or(T::nan())
                    .to_f64_lossy()
            )),
            Err(err) => verdict
                .notes
                .push(format!("sum-minus-integral gap failed: {err}")),
        }
    }
    Ok(verdict)
}
