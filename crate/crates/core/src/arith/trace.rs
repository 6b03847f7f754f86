//! Checkpointed summatory traces `S(n) = Σ_{k<=n} f(k)`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::empirical::sequence::{ArithmeticSequence, Chunk};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::Scalar;

/// Strictly increasing positive evaluation points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Checkpoints(Vec<u64>);

impl Checkpoints {
    pub fn explicit(points: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::argument("checkpoint list is empty"));
        }
        if points[0] == 0 {
            return Err(Error::argument("checkpoints must be positive"));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::argument(format!(
                "checkpoints must be strictly increasing ({} followed by {})",
                w[0], w[1]
            )));
        }
        Ok(Self(points))
    }

    /// `round(start · ratio^j)` for j = 0, 1, … while the value stays `<= max`.
    pub fn geometric(start: u64, ratio: f64, max: u64) -> Result<Self> {
        if start == 0 {
            return Err(Error::argument("geometric start must be positive"));
        }
        if !(ratio > 1.0) || !ratio.is_finite() {
            return Err(Error::argument(format!(
                "geometric ratio must be finite and > 1, got {ratio}"
            )));
        }
        if start > max {
            return Err(Error::argument(format!(
                "geometric start {start} exceeds the largest index {max}"
            )));
        }
        let mut points: Vec<u64> = Vec::new();
        for j in 0.. {
            let x = (start as f64 * ratio.powi(j)).round();
            if x > max as f64 {
                break;
            }
            let x = x as u64;
            if points.last().is_none_or(|&last| x > last) {
                points.push(x);
            }
        }
        Self::explicit(points)
    }

    /// Geometric schedule with ratio 2 starting at 10.
    pub fn default_for(max: u64) -> Result<Self> {
        Self::geometric(10, 2.0, max)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> u64 {
        *self.0.last().expect("checkpoints are nonempty")
    }

    /// Smallest ratio between consecutive checkpoints (`inf` for a single one).
    pub fn min_ratio(&self) -> f64 {
        self.0
            .windows(2)
            .map(|w| w[1] as f64 / w[0] as f64)
            .fold(f64::INFINITY, f64::min)
    }
}

impl TryFrom<Vec<u64>> for Checkpoints {
    type Error = Error;

    fn try_from(points: Vec<u64>) -> Result<Self> {
        Self::explicit(points)
    }
}

impl From<Checkpoints> for Vec<u64> {
    fn from(c: Checkpoints) -> Self {
        c.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccumulationKind {
    ExactInteger,
    CompensatedFloat,
}

#[derive(Debug, Clone, PartialEq)]
enum TraceValues<T> {
    Exact(Vec<i64>),
    Compensated(Vec<T>),
}

/// Values of a summatory function at a checkpoint schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SummatoryTrace<T> {
    checkpoints: Checkpoints,
    values: TraceValues<T>,
}

impl<T: Scalar> SummatoryTrace<T> {
    pub fn exact(checkpoints: Checkpoints, values: Vec<i64>) -> Result<Self> {
        check_len(&checkpoints, values.len())?;
        Ok(Self {
            checkpoints,
            values: TraceValues::Exact(values),
        })
    }

    pub fn compensated(checkpoints: Checkpoints, values: Vec<T>) -> Result<Self> {
        check_len(&checkpoints, values.len())?;
        Ok(Self {
            checkpoints,
            values: TraceValues::Compensated(values),
        })
    }

    /// Trace of a closed-form `S(n)`, used for synthetic checks.
    pub fn from_fn(checkpoints: Checkpoints, s: impl Fn(u64) -> T) -> Self {
        let values = checkpoints.as_slice().iter().map(|&n| s(n)).collect();
        Self {
            checkpoints,
            values: TraceValues::Compensated(values),
        }
    }

    pub fn checkpoints(&self) -> &Checkpoints {
        &self.checkpoints
    }

    pub fn kind(&self) -> AccumulationKind {
        match self.values {
            TraceValues::Exact(_) => AccumulationKind::ExactInteger,
            TraceValues::Compensated(_) => AccumulationKind::CompensatedFloat,
        }
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    /// Exact integer values, when the trace was accumulated exactly.
    pub fn exact_values(&self) -> Option<&[i64]> {
        match &self.values {
            TraceValues::Exact(v) => Some(v),
            TraceValues::Compensated(_) => None,
        }
    }

    pub fn value(&self, j: usize) -> T {
        match &self.values {
            TraceValues::Exact(v) => T::from_i64(v[j]).expect("integer representable"),
            TraceValues::Compensated(v) => v[j],
        }
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.len()).map(|j| self.value(j)).collect()
    }

    /// `(n_j, S(n_j))` pairs.
    pub fn points(&self) -> impl Iterator<Item = (u64, T)> + '_ {
        self.checkpoints
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, &n)| (n, self.value(j)))
    }

    /// CSV with header `n,S`; integers without exponent, floats with 17
    /// significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,S")?;
        for (j, &n) in self.checkpoints.as_slice().iter().enumerate() {
            match &self.values {
                TraceValues::Exact(v) => writeln!(w, "{n},{}", v[j])?,
                TraceValues::Compensated(v) => writeln!(w, "{n},{}", format_float(v[j]))?,
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }
}

fn check_len(checkpoints: &Checkpoints, len: usize) -> Result<()> {
    if checkpoints.len() != len {
        return Err(Error::argument(format!(
            "{} checkpoints but {len} values",
            checkpoints.len()
        )));
    }
    Ok(())
}

/// Shortest-free scientific rendering with 17 significant digits.
pub fn format_float<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.to_f64_lossy())
}

/// Summatory trace of `seq`, streaming it once up to the last checkpoint.
pub fn summatory_trace<T: Scalar>(
    seq: &ArithmeticSequence<T>,
    n: u64,
    checkpoints: &Checkpoints,
) -> Result<SummatoryTrace<T>> {
    scan_partial_sums(seq, n, checkpoints, |_, _| {})
}

/// As [`summatory_trace`], additionally reporting every partial sum
/// `(k, S(k))` for `k` up to the last checkpoint, in order.
pub fn scan_partial_sums<T: Scalar, F>(
    seq: &ArithmeticSequence<T>,
    n: u64,
    checkpoints: &Checkpoints,
    mut visit: F,
) -> Result<SummatoryTrace<T>>
where
    F: FnMut(u64, T),
{
    if checkpoints.last() > n {
        return Err(Error::argument(format!(
            "largest checkpoint {} exceeds N = {n}",
            checkpoints.last()
        )));
    }
    if n > seq.bound() {
        return Err(Error::Bound {
            what: "N",
            value: n,
            bound: seq.bound(),
        });
    }
    let targets = checkpoints.as_slice();
    let end = checkpoints.last();
    let mut next = 0usize;

    if seq.is_integer_valued() {
        let mut acc: i64 = 0;
        let mut out = Vec::with_capacity(targets.len());
        seq.for_each_chunk(1, end, |start, chunk| {
            let Chunk::Integer(values) = chunk else {
                return Err(Error::Numeric(
                    "integer sequence produced real chunk".into(),
                ));
            };
            for (i, &v) in values.iter().enumerate() {
                let k = start + i as u64;
                acc += v as i64;
                visit(k, T::from_i64(acc).expect("partial sum representable"));
                if k == targets[next] {
                    out.push(acc);
                    next += 1;
                }
            }
            Ok(())
        })?;
        SummatoryTrace::exact(checkpoints.clone(), out)
    } else {
        let mut acc = CompensatedSum::<T>::new();
        let mut out = Vec::with_capacity(targets.len());
        seq.for_each_chunk(1, end, |start, chunk| {
            let Chunk::Real(values) = chunk else {
                return Err(Error::Numeric(
                    "real sequence produced integer chunk".into(),
                ));
            };
            for (i, &v) in values.iter().enumerate() {
                let k = start + i as u64;
                acc.add(v);
                let s = acc.value();
                visit(k, s);
                if k == targets[next] {
                    out.push(s);
                    next += 1;
                }
            }
            Ok(())
        })?;
        SummatoryTrace::compensated(checkpoints.clone(), out)
    }
}

/// `M(n_j) = Σ_{k<=n_j} μ(k)`, exact.
pub fn mertens_trace<T: Scalar>(n: u64, checkpoints: &Checkpoints) -> Result<SummatoryTrace<T>> {
    summatory_trace(&ArithmeticSequence::mobius(), n, checkpoints)
}

/// `L(n_j) = Σ_{k<=n_j} λ(k)`, exact.
pub fn liouville_trace<T: Scalar>(n: u64, checkpoints: &Checkpoints) -> Result<SummatoryTrace<T>> {
    summatory_trace(&ArithmeticSequence::liouville(), n, checkpoints)
}

/// `Σ_{k<=n_j} μ(k)/k`, compensated.
pub fn weighted_mobius_trace<T: Scalar>(
    n: u64,
    checkpoints: &Checkpoints,
) -> Result<SummatoryTrace<T>> {
    summatory_trace(&ArithmeticSequence::mobius_over_k(), n, checkpoints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(points: &[u64]) -> Checkpoints {
        Checkpoints::explicit(points.to_vec()).unwrap()
    }

    #[test]
    fn mertens_examples() {
        let t = mertens_trace::<f64>(10, &at(&[10])).unwrap();
        assert_eq!(t.exact_values(), Some(&[-1i64][..]));
        assert_eq!(t.kind(), AccumulationKind::ExactInteger);
        let t = mertens_trace::<f64>(1, &at(&[1])).unwrap();
        assert_eq!(t.exact_values(), Some(&[1i64][..]));
        let t = mertens_trace::<f64>(100, &at(&[100])).unwrap();
        assert_eq!(t.exact_values(), Some(&[1i64][..]));
    }

    #[test]
    fn liouville_examples() {
        let t = liouville_trace::<f64>(10, &at(&[1, 2, 10])).unwrap();
        assert_eq!(t.exact_values(), Some(&[1i64, 0, 0][..]));
    }

    #[test]
    fn weighted_examples() {
        let t = weighted_mobius_trace::<f64>(3, &at(&[1, 3])).unwrap();
        assert_eq!(t.kind(), AccumulationKind::CompensatedFloat);
        assert_eq!(t.value(0), 1.0);
        assert!((t.value(1) - (1.0 - 0.5 - 1.0 / 3.0)).abs() < 1e-16);
    }

    #[test]
    fn csv_layout() {
        let t = mertens_trace::<f64>(100, &at(&[10, 100])).unwrap();
        assert_eq!(t.to_csv_string(), "n,S\n10,-1\n100,1\n");
        let w = weighted_mobius_trace::<f64>(3, &at(&[1, 3])).unwrap();
        assert_eq!(
            w.to_csv_string(),
            "n,S\n1,1.0000000000000000e0\n3,1.6666666666666669e-1\n"
        );
    }

    #[test]
    fn checkpoint_validation() {
        assert!(Checkpoints::explicit(vec![]).is_err());
        assert!(Checkpoints::explicit(vec![0, 3]).is_err());
        assert!(Checkpoints::explicit(vec![5, 5]).is_err());
        assert!(Checkpoints::explicit(vec![6, 5]).is_err());
        assert!(Checkpoints::geometric(10, 1.0, 100).is_err());
        assert!(Checkpoints::geometric(10, 2.0, 5).is_err());
        let g = Checkpoints::default_for(1000).unwrap();
        assert_eq!(g.as_slice(), &[10, 20, 40, 80, 160, 320, 640]);
        assert_eq!(
            Checkpoints::geometric(1, 1.5, 10).unwrap().as_slice(),
            &[1, 2, 3, 5, 8]
        );
        assert!(mertens_trace::<f64>(50, &at(&[10, 100])).is_err());
    }

    #[test]
    fn checkpoints_serde_validates() {
        let c: Checkpoints = serde_json::from_str("[10,20]").unwrap();
        assert_eq!(c.as_slice(), &[10, 20]);
        assert!(serde_json::from_str::<Checkpoints>("[20,10]").is_err());
    }
}
