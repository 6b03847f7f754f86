//! Finitely-valued schedules: value `a_i` taken with probability
//! `p_i(n) = p_i0 + ε_i(n)`, where `ε_i(n) = c_i·g(n)`, `Σ c_i = 0` and `g`
//! decays faster than `1/n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::Scalar;

const SUM_TOLERANCE: f64 = 1e-12;

/// Shape `g(n)` of the perturbation; logarithms are natural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationKind {
    /// `g ≡ 0`
    None,
    /// `g(n) = 1/((n+1)·ln(n+1))`
    Log,
    /// `g(n) = 1/((n+1)·ln²(n+1))`
    Log2,
}

impl PerturbationKind {
    pub fn shape<T: Scalar>(self, n: u64) -> T {
        let m = T::from_count(n) + T::one();
        match self {
            PerturbationKind::None => T::zero(),
            PerturbationKind::Log => (m * m.ln()).recip(),
            PerturbationKind::Log2 => {
                let l = m.ln();
                (m * l * l).recip()
            }
        }
    }
}

/// Assertion-5 schedule. Below `n_min` the raw perturbation would push some
/// probability outside `[0, 1]`; there `g` is capped at the largest admissible
/// value, which for two values is the same as clamping `p_1` to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointSchedule<T> {
    values: Vec<T>,
    base_probs: Vec<T>,
    kind: PerturbationKind,
    coefficients: Vec<T>,
    shape_cap: T,
    n_min: u64,
}

impl<T: Scalar> TwoPointSchedule<T> {
    /// `coefficients[i]` scales the perturbation of value `i`; they must sum
    /// to zero.
    pub fn new(
        values: Vec<T>,
        base_probs: Vec<T>,
        kind: PerturbationKind,
        coefficients: Vec<T>,
    ) -> Result<Self> {
        let l = values.len();
        if l < 2 {
            return Err(Error::argument(format!(
                "a schedule needs at least 2 values, got {l}"
            )));
        }
        if base_probs.len() != l || coefficients.len() != l {
            return Err(Error::argument(format!(
                "{l} values but {} base probabilities and {} coefficients",
                base_probs.len(),
                coefficients.len()
            )));
        }
        if values
            .iter()
            .chain(&base_probs)
            .chain(&coefficients)
            .any(|x| !x.is_finite())
        {
            return Err(Error::argument("schedule entries must be finite"));
        }
        for i in 0..l {
            if values[..i].contains(&values[i]) {
                return Err(Error::argument(format!("value {} listed twice", values[i])));
            }
        }
        if base_probs.iter().any(|&p| p < T::zero() || p > T::one()) {
            return Err(Error::argument("base probabilities must lie in [0, 1]"));
        }
        let tol = T::lit(SUM_TOLERANCE);
        let total: CompensatedSum<T> = base_probs.iter().copied().collect();
        if (total.value() - T::one()).abs() > tol {
            return Err(Error::argument(format!(
                "base probabilities sum to {}, not 1",
                total.value()
            )));
        }
        let drift: CompensatedSum<T> = coefficients.iter().copied().collect();
        if drift.value().abs() > tol {
            return Err(Error::argument(format!(
                "perturbation coefficients sum to {}, not 0",
                drift.value()
            )));
        }

        // largest g keeping every p_i0 + c_i·g inside [0, 1]
        let shape_cap = base_probs
            .iter()
            .zip(&coefficients)
            .filter(|(_, &c)| c != T::zero())
            .map(|(&p, &c)| {
                if c > T::zero() {
                    (T::one() - p) / c
                } else {
                    p / -c
                }
            })
            .fold(T::infinity(), T::min);
        let active = kind != PerturbationKind::None && shape_cap.is_finite();
        if active && shape_cap <= T::zero() {
            return Err(Error::argument(
                "perturbation leaves [0, 1] for every n: a base probability sits on the boundary",
            ));
        }
        let n_min = if active {
            first_admissible(kind, shape_cap)
        } else {
            1
        };
        Ok(Self {
            values,
            base_probs,
            kind,
            coefficients,
            shape_cap,
            n_min,
        })
    }

    /// Two values with perturbation `+g` on the first and `−g` on the second.
    pub fn two_point(values: [T; 2], base_probs: [T; 2], kind: PerturbationKind) -> Result<Self> {
        Self::new(
            values.to_vec(),
            base_probs.to_vec(),
            kind,
            vec![T::one(), -T::one()],
        )
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn base_probs(&self) -> &[T] {
        &self.base_probs
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn kind(&self) -> PerturbationKind {
        self.kind
    }

    /// Smallest index from which the uncapped perturbation is admissible.
    pub fn n_min(&self) -> u64 {
        self.n_min
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    /// `g(n)`, capped below `n_min`.
    pub fn effective_shape(&self, n: u64) -> T {
        self.kind.shape::<T>(n).min(self.shape_cap)
    }

    /// `ε_i(n)`
    pub fn perturbation(&self, i: usize, n: u64) -> T {
        self.coefficients[i] * self.effective_shape(n)
    }

    /// `p_i(n) = p_i0 + ε_i(n)`
    pub fn probability(&self, i: usize, n: u64) -> T {
        self.base_probs[i] + self.perturbation(i, n)
    }

    pub fn probabilities(&self, n: u64) -> Vec<T> {
        (0..self.arity()).map(|i| self.probability(i, n)).collect()
    }

    /// `Σ a_i·p_i0`, the limiting mean.
    pub fn limit_mean(&self) -> T {
        self.values
            .iter()
            .zip(&self.base_probs)
            .map(|(&a, &p)| a * p)
            .collect::<CompensatedSum<T>>()
            .value()
    }

    /// `Σ a_i·c_i`, so that `M[f_n] = limit_mean + drift_weight·g(n)`.
    fn drift_weight(&self) -> T {
        self.values
            .iter()
            .zip(&self.coefficients)
            .map(|(&a, &c)| a * c)
            .collect::<CompensatedSum<T>>()
            .value()
    }

    /// `M[f_n] = Σ a_i·(p_i0 + ε_i(n))`.
    pub fn mean(&self, n: u64) -> T {
        self.limit_mean() + self.drift_weight() * self.effective_shape(n)
    }

    /// `S(n) = n·M[f_n]`.
    pub fn summatory(&self, n: u64) -> T {
        T::from_count(n) * self.mean(n)
    }

    /// Checks that `n·|ε_i(n)|` does not increase (beyond 10% slack) at
    /// `samples` geometric points from 100 upward.
    pub fn verify_decay(&self, samples: u32) -> Result<()> {
        let weight = |n: u64| T::from_count(n) * self.kind.shape::<T>(n);
        let mut prev = weight(100);
        for j in 1..=samples {
            let n = 100u64 << j.min(50);
            let w = weight(n);
            if w > prev * T::lit(1.1) {
                return Err(Error::argument(format!(
                    "n·|ε(n)| grows between samples (at n = {n})"
                )));
            }
            prev = w;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ScheduleDocument::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScheduleDocument = serde_json::from_str(text)?;
        doc.try_into()
    }
}

/// `M[f_n]` of the schedule.
pub fn schedule_mean<T: Scalar>(s: &TwoPointSchedule<T>, n: u64) -> T {
    s.mean(n)
}

/// `S(n) = n·M[f_n]`; leading term `n·Σ a_i p_i0`.
pub fn schedule_summatory<T: Scalar>(s: &TwoPointSchedule<T>, n: u64) -> T {
    s.summatory(n)
}

fn first_admissible<T: Scalar>(kind: PerturbationKind, cap: T) -> u64 {
    // g is decreasing for both log families
    let fits = |n: u64| kind.shape::<T>(n) <= cap;
    if fits(1) {
        return 1;
    }
    let mut hi = 2u64;
    while !fits(hi) {
        hi = hi.saturating_mul(2);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The log example: `±1` with `p_1(n) = 1/2 + 1/((n+1)ln(n+1))`.
pub fn paper_log_example<T: Scalar>() -> TwoPointSchedule<T> {
    let half = T::lit(0.5);
    TwoPointSchedule::two_point([T::one(), -T::one()], [half, half], PerturbationKind::Log)
        .expect("log example is a valid schedule")
}

/// The log² example: `1` or `0` with `p_1(n) = 1/2 + 1/((n+1)ln²(n+1))`.
pub fn paper_log2_example<T: Scalar>() -> TwoPointSchedule<T> {
    let half = T::lit(0.5);
    TwoPointSchedule::two_point([T::one(), T::zero()], [half, half], PerturbationKind::Log2)
        .expect("log² example is a valid schedule")
}

/// Unperturbed `±1` with probability 1/2 each.
pub fn fair_coin<T: Scalar>() -> TwoPointSchedule<T> {
    let half = T::lit(0.5);
    TwoPointSchedule::two_point([T::one(), -T::one()], [half, half], PerturbationKind::None)
        .expect("fair coin is a valid schedule")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationDocument {
    pub kind: PerturbationKind,
    pub n_min: u64,
}

/// JSON layout `{values[], base_probs[], perturbation: {kind, n_min}}`;
/// `coefficients` appears only when it differs from `(+1, −1, 0, …)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub values: Vec<f64>,
    pub base_probs: Vec<f64>,
    pub perturbation: PerturbationDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
}

fn default_coefficients(l: usize) -> Vec<f64> {
    let mut c = vec![0.0; l];
    if l >= 2 {
        c[0] = 1.0;
        c[1] = -1.0;
    }
    c
}

impl<T: Scalar> From<&TwoPointSchedule<T>> for ScheduleDocument {
    fn from(s: &TwoPointSchedule<T>) -> Self {
        let to_f64 = |v: &[T]| v.iter().map(|x| x.to_f64_lossy()).collect::<Vec<_>>();
        let coefficients = to_f64(&s.coefficients);
        Self {
            values: to_f64(&s.values),
            base_probs: to_f64(&s.base_probs),
            perturbation: PerturbationDocument {
                kind: s.kind,
                n_min: s.n_min,
            },
            coefficients: (coefficients != default_coefficients(s.arity())).then_some(coefficients),
        }
    }
}

impl<T: Scalar> TryFrom<ScheduleDocument> for TwoPointSchedule<T> {
    type Error = Error;

    fn try_from(doc: ScheduleDocument) -> Result<Self> {
        let coefficients = doc
            .coefficients
            .unwrap_or_else(|| default_coefficients(doc.values.len()));
        let lift = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
        let s = Self::new(
            lift(doc.values),
            lift(doc.base_probs),
            doc.perturbation.kind,
            lift(coefficients),
        )?;
        if s.n_min != doc.perturbation.n_min {
            return Err(Error::argument(format!(
                "perturbation.n_min is {} but the schedule is admissible from n = {}",
                doc.perturbation.n_min, s.n_min
            )));
        }
        Ok(s)
    }
}
