//! Deterministic two-valued sequences whose running counts follow a schedule.

use crate::empirical::sequence::ArithmeticSequence;
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::synth::schedule::TwoPointSchedule;
use crate::Scalar;

/// What the running count of the first value is steered towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RealizationTarget {
    /// `n·p_1(n)`: the share of `a_1` among `f(1..n)` equals `p_1(n)`, so
    /// the realized `S(n)` follows `n·M[f_n]`.
    #[default]
    Proportion,
    /// `Σ_{k<=n} p_1(k)`: `f(k)` is drawn "with probability `p_1(k)`" one
    /// index at a time.
    Cumulative,
}

/// Target count of `a_1` after each step `n = 1..=len`.
pub fn count_targets<T: Scalar>(
    s: &TwoPointSchedule<T>,
    len: u64,
    target: RealizationTarget,
) -> Vec<T> {
    match target {
        RealizationTarget::Proportion => (1..=len)
            .map(|n| T::from_count(n) * s.probability(0, n))
            .collect(),
        RealizationTarget::Cumulative => {
            let mut acc = CompensatedSum::new();
            (1..=len)
                .map(|n| {
                    acc.add(s.probability(0, n));
                    acc.value()
                })
                .collect()
        }
    }
}

/// Greedy choice per step: `true` selects `a_1`.
///
/// At step `n`, `a_1` is taken iff its deficit `t(n) − c_1` is at least the
/// deficit of `a_2`, i.e. `c_1 + 1/2 <= t(n)` with `c_1` the count so far;
/// equal deficits go to `a_1`.
pub fn greedy_choices<T: Scalar>(
    s: &TwoPointSchedule<T>,
    len: u64,
    target: RealizationTarget,
) -> Result<Vec<bool>> {
    if s.arity() != 2 {
        return Err(Error::UnsupportedArity(s.arity()));
    }
    if len == 0 {
        return Err(Error::argument("realization length must be positive"));
    }
    let two = T::lit(2.0);
    let mut count = T::zero();
    Ok(count_targets(s, len, target)
        .into_iter()
        .map(|t| {
            let first = two * (t - count) >= T::one();
            if first {
                count += T::one();
            }
            first
        })
        .collect())
}

/// Materializes `f(1..=len)` with values in `{a_1, a_2}`.
pub fn realize_greedy<T: Scalar>(
    s: &TwoPointSchedule<T>,
    len: u64,
    target: RealizationTarget,
) -> Result<ArithmeticSequence<T>> {
    let (a1, a2) = match s.values() {
        [a1, a2] => (*a1, *a2),
        other => return Err(Error::UnsupportedArity(other.len())),
    };
    let values = greedy_choices(s, len, target)?
        .into_iter()
        .map(|first| if first { a1 } else { a2 })
        .collect();
    ArithmeticSequence::synthesized(format!("greedy({:?})", s.kind()).to_lowercase(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::schedule::{
        fair_coin, paper_log2_example, paper_log_example, PerturbationKind,
    };

    fn counts(choices: &[bool]) -> Vec<u64> {
        choices
            .iter()
            .scan(0u64, |c, &x| {
                *c += x as u64;
                Some(*c)
            })
            .collect()
    }

    #[test]
    fn fair_coin_first_steps() {
        let s = fair_coin::<f64>();
        for target in [RealizationTarget::Proportion, RealizationTarget::Cumulative] {
            let c = counts(&greedy_choices(&s, 4, target).unwrap());
            // targets 0.5, 1, 1.5, 2 with ties going to a_1
            assert_eq!(c, vec![1, 1, 2, 2]);
        }
    }

    #[test]
    fn degenerate_schedule_is_constant() {
        let s =
            TwoPointSchedule::two_point([3.0, -1.0], [1.0, 0.0], PerturbationKind::None).unwrap();
        let f = realize_greedy(&s, 50, RealizationTarget::Proportion).unwrap();
        assert!(f.values(1, 50).unwrap().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn deviation_within_half_after_start() {
        for s in [
            paper_log_example::<f64>(),
            paper_log2_example(),
            fair_coin(),
        ] {
            for target in [RealizationTarget::Proportion, RealizationTarget::Cumulative] {
                let len = 20_000;
                let c = counts(&greedy_choices(&s, len, target).unwrap());
                let t = count_targets(&s, len, target);
                for (ci, ti) in c.iter().zip(&t) {
                    assert!((*ci as f64 - ti).abs() <= 0.5 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn realized_sum_tracks_schedule_summatory() {
        let s = paper_log_example::<f64>();
        let f = realize_greedy(&s, 10_000, RealizationTarget::Proportion).unwrap();
        let values = f.values(1, 10_000).unwrap();
        let mut sum = 0.0;
        for (i, v) in values.iter().enumerate() {
            sum += v;
            let n = i as u64 + 1;
            assert!((sum - s.summatory(n)).abs() <= 2.0, "n = {n}");
        }
    }

    #[test]
    fn arity_is_checked() {
        let s = TwoPointSchedule::new(
            vec![0.0, 1.0, 2.0],
            vec![0.2, 0.3, 0.5],
            PerturbationKind::None,
            vec![0.0; 3],
        )
        .unwrap();
        assert!(matches!(
            realize_greedy(&s, 10, RealizationTarget::Proportion),
            Err(Error::UnsupportedArity(3))
        ));
    }
}
