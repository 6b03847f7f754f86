//! Lag correlation estimator for asymptotic independence:
//! `ρ(n, h) = (1/n)Σ f(k)f(k+h) − [(1/n)Σ f(k)]·[(1/n)Σ f(k+h)]`, `k <= n`.

use crate::empirical::sequence::ArithmeticSequence;
use crate::error::{Error, Result};
use crate::sum::{pivoted_mean, CompensatedSum};
use crate::Scalar;

/// Lags examined when none are given.
pub const DEFAULT_LAGS: [u64; 4] = [1, 2, 5, 10];

/// `ρ(n, h)` for `f` evaluated on `1..=n+h`.
pub fn independence_estimator<T: Scalar>(f: &ArithmeticSequence<T>, n: u64, h: u64) -> Result<T> {
    if n == 0 || h == 0 {
        return Err(Error::argument("n and lag must be positive"));
    }
    let end = n
        .checked_add(h)
        .ok_or_else(|| Error::argument("n + h overflows"))?;
    if end > f.bound() {
        return Err(Error::Bound {
            what: "n + h",
            value: end,
            bound: f.bound(),
        });
    }
    let values = f.values(1, end)?;
    lag_covariance(&values, n as usize, h as usize)
}

/// `ρ(n, h)` over a materialized array where `values[k-1] = f(k)`.
///
/// Computed in centered form, which is algebraically the same and returns
/// exactly zero for constant input.
pub fn lag_covariance<T: Scalar>(values: &[T], n: usize, h: usize) -> Result<T> {
    if n == 0 || values.len() < n + h {
        return Err(Error::argument(format!(
            "need {} values for n = {n}, h = {h}, have {}",
            n + h,
            values.len()
        )));
    }
    let head = &values[..n];
    let shifted = &values[h..h + n];
    let m1 = pivoted_mean(head).expect("nonempty");
    let m2 = pivoted_mean(shifted).expect("nonempty");
    let cross: CompensatedSum<T> = head
        .iter()
        .zip(shifted)
        .map(|(&a, &b)| (a - m1) * (b - m2))
        .collect();
    Ok(cross.value() / T::from_count(n as u64))
}

/// One row of an independence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagCorrelation<T> {
    pub n: u64,
    pub lag: u64,
    pub rho: T,
}

/// `ρ(n_j, h)` for every checkpoint and lag, from one materialization.
pub fn independence_table<T: Scalar>(
    f: &ArithmeticSequence<T>,
    checkpoints: &[u64],
    lags: &[u64],
) -> Result<Vec<LagCorrelation<T>>> {
    let max_lag = lags.iter().copied().max().unwrap_or(0);
    let max_n = checkpoints.iter().copied().max().unwrap_or(0);
    if max_n == 0 || max_lag == 0 || lags.contains(&0) {
        return Err(Error::argument("need positive checkpoints and lags"));
    }
    if max_n + max_lag > f.bound() {
        return Err(Error::Bound {
            what: "n + h",
            value: max_n + max_lag,
            bound: f.bound(),
        });
    }
    let values = f.values(1, max_n + max_lag)?;
    let mut rows = Vec::with_capacity(checkpoints.len() * lags.len());
    for &n in checkpoints {
        for &lag in lags {
            rows.push(LagCorrelation {
                n,
                lag,
                rho: lag_covariance(&values, n as usize, lag as usize)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::sequence::ClosedForm;

    #[test]
    fn constant_is_exactly_uncorrelated() {
        for c in [3.0, 0.1, -7.25] {
            let f = ArithmeticSequence::closed_form(ClosedForm::constant(c), 1 << 20);
            for h in [1, 2, 5] {
                assert_eq!(independence_estimator(&f, 1001, h).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn alternating_is_maximally_anticorrelated() {
        let f = ArithmeticSequence::closed_form(ClosedForm::<f64>::alternating(), 1 << 20);
        assert_eq!(independence_estimator(&f, 1000, 1).unwrap(), -1.0);
        assert_eq!(independence_estimator(&f, 1000, 2).unwrap(), 1.0);
    }

    #[test]
    fn errors() {
        let f = ArithmeticSequence::synthesized("s", vec![1.0; 10]).unwrap();
        assert!(matches!(
            independence_estimator(&f, 9, 2),
            Err(Error::Bound { .. })
        ));
        assert!(independence_estimator(&f, 0, 1).is_err());
        assert!(lag_covariance(&[1.0, 2.0], 2, 1).is_err());
    }

    #[test]
    fn table_rows() {
        let f = ArithmeticSequence::<f64>::mobius();
        let rows = independence_table(&f, &[100, 1000], &DEFAULT_LAGS).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[5].rho, independence_estimator(&f, 1000, 2).unwrap());
    }
}
