use proptest::prelude::*;

use summatoria::arith::{liouville_oracle, mobius_oracle, sieve_block, Sieve, SieveConfig};
use summatoria::empirical::{
    empirical_cdf, independence_estimator, ks_distance, ArithmeticSequence, ClosedForm, Reference,
};
use summatoria::limit::{classify_remainders, ClassifierParams, RemainderClass};
use summatoria::synth::{
    greedy_choices, paper_log2_example, paper_log_example, schedule_mean, schedule_summatory,
    PerturbationKind, RealizationTarget, TwoPointSchedule,
};
use summatoria::trace::{mertens_trace, summatory_trace, Checkpoints};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_is_multiplicative(m in 1u64..1000, n in 1u64..1000) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(
            mobius_oracle(m * n).unwrap(),
            mobius_oracle(m).unwrap() * mobius_oracle(n).unwrap()
        );
    }

    #[test]
    fn liouville_is_completely_multiplicative(m in 1u64..1000, n in 1u64..1000) {
        prop_assert_eq!(
            liouville_oracle(m * n).unwrap(),
            liouville_oracle(m).unwrap() * liouville_oracle(n).unwrap()
        );
    }

    #[test]
    fn divisor_sum_of_mobius(n in 1u64..20_000) {
        let total: i64 = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| mobius_oracle(d).unwrap() as i64)
            .sum();
        prop_assert_eq!(total, (n == 1) as i64);
    }

    #[test]
    fn sieve_matches_oracle_on_random_ranges(lo in 1u64..9_990_000, len in 1u64..2000) {
        let hi = lo + len;
        let block = sieve_block(lo, hi).unwrap();
        for k in lo..=hi {
            prop_assert_eq!(block.mu_at(k), Some(mobius_oracle(k).unwrap()));
            prop_assert_eq!(block.lambda_at(k), Some(liouville_oracle(k).unwrap()));
        }
    }

    #[test]
    fn block_size_does_not_change_values(block_size in 1usize..5000, hi in 1u64..20_000) {
        let small = Sieve::new(SieveConfig { block_size, ..Default::default() }).unwrap();
        let mut mu = Vec::new();
        small.for_each_block(1, hi, |b| {
            mu.extend_from_slice(b.mu());
            Ok(())
        }).unwrap();
        prop_assert_eq!(mu, sieve_block(1, hi).unwrap().mu().to_vec());
    }

    #[test]
    fn trace_is_additive_over_splits(a in 1u64..50_000, b in 1u64..50_000) {
        // S(a + b) − S(a) equals the direct sum over (a, a + b]
        let c = Checkpoints::explicit(vec![a, a + b]).unwrap();
        let t = mertens_trace::<f64>(a + b, &c).unwrap();
        let v = t.exact_values().unwrap();
        let direct: i64 = sieve_block(a + 1, a + b).unwrap().mu().iter().map(|&x| x as i64).sum();
        prop_assert_eq!(v[1] - v[0], direct);
    }

    #[test]
    fn trivial_bound_holds(n in 1u64..100_000, c in -3.0f64..3.0) {
        let f = ArithmeticSequence::closed_form(ClosedForm::constant(c), 1 << 30);
        let cps = Checkpoints::explicit(vec![n]).unwrap();
        let t = summatory_trace(&f, n, &cps).unwrap();
        prop_assert!(t.value(0).abs() <= c.abs() * n as f64 * (1.0 + 1e-12));
        let m = mertens_trace::<f64>(n, &cps).unwrap();
        prop_assert!(m.value(0).abs() <= n as f64);
    }

    #[test]
    fn moments_are_shift_and_scale_covariant(
        xs in prop::collection::vec(-100.0f64..100.0, 2..200),
        a in -50.0f64..50.0,
        b in 0.1f64..10.0,
    ) {
        let d = empirical_cdf(&xs).unwrap();
        let moved: Vec<f64> = xs.iter().map(|x| a + b * x).collect();
        let e = empirical_cdf(&moved).unwrap();
        let tol = 1e-9 * (1.0 + d.variance() * b * b);
        prop_assert!((e.mean() - (a + b * d.mean())).abs() <= 1e-9 * (1.0 + a.abs() + b * 100.0));
        prop_assert!((e.variance() - b * b * d.variance()).abs() <= tol);
    }

    #[test]
    fn ks_to_normal_is_affine_invariant(
        xs in prop::collection::vec(-10.0f64..10.0, 3..300),
        a in -5.0f64..5.0,
        b in 0.5f64..4.0,
    ) {
        let d = empirical_cdf(&xs).unwrap();
        prop_assume!(d.variance() > 1e-6);
        let moved: Vec<f64> = xs.iter().map(|x| a + b * x).collect();
        let d1 = ks_distance(&d, Reference::StandardNormal).unwrap();
        let d2 = ks_distance(&empirical_cdf(&moved).unwrap(), Reference::StandardNormal).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-12, "{} vs {}", d1, d2);
    }

    #[test]
    fn empirical_cdf_is_a_cdf(
        xs in prop::collection::vec(-10.0f64..10.0, 1..200),
        probes in prop::collection::vec(-12.0f64..12.0, 1..50),
    ) {
        let d = empirical_cdf(&xs).unwrap();
        let mut probes = probes;
        probes.sort_by(f64::total_cmp);
        let mut prev = 0.0;
        for p in probes {
            let v = d.cdf(p);
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert!(v >= prev);
            prop_assert!(d.cdf_below(p) <= v);
            prev = v;
        }
        prop_assert_eq!(d.cdf(11.0), 1.0);
        prop_assert_eq!(d.cdf(-11.0), 0.0);
    }

    #[test]
    fn constant_sequence_is_uncorrelated(c in -5.0f64..5.0, n in 1u64..5000, h in 1u64..20) {
        let f = ArithmeticSequence::closed_form(ClosedForm::constant(c), 1 << 30);
        prop_assert_eq!(independence_estimator(&f, n, h).unwrap(), 0.0);
    }

    #[test]
    fn classification_is_scale_equivariant(
        exponent in -1.5f64..1.5,
        scale in 1e-3f64..1e3,
    ) {
        let cps: Vec<u64> = Checkpoints::geometric(100, 2.0, 10_000_000).unwrap().as_slice().to_vec();
        let base: Vec<f64> = cps.iter().map(|&n| (n as f64).powf(exponent)).collect();
        let scaled: Vec<f64> = base.iter().map(|r| r * scale).collect();
        let params = ClassifierParams::default();
        let f1 = classify_remainders(&cps, base, &params);
        let f2 = classify_remainders(&cps, scaled, &params);
        prop_assert_eq!(f1.class, f2.class);
        let (s1, s2) = (f1.loglog_slope.unwrap(), f2.loglog_slope.unwrap());
        prop_assert!((s1 - s2).abs() < 1e-9);
        prop_assert!((s1 - exponent).abs() < 1e-9);
    }

    #[test]
    fn schedule_probabilities_are_valid(n in 1u64..10_000_000, which in 0usize..2) {
        let s: TwoPointSchedule<f64> =
            if which == 0 { paper_log_example() } else { paper_log2_example() };
        let p = s.probabilities(n);
        prop_assert!(p.iter().all(|&q| (0.0..=1.0).contains(&q)));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mean: f64 = p.iter().zip(s.values()).map(|(p, a)| p * a).sum();
        prop_assert!((schedule_mean(&s, n) - mean).abs() < 1e-12);
        prop_assert!((schedule_summatory(&s, n) - n as f64 * schedule_mean(&s, n)).abs()
            <= 1e-12 * n as f64);
    }

    #[test]
    fn greedy_stays_within_half_of_target(
        p in 0.05f64..0.95,
        kind in prop::sample::select(vec![PerturbationKind::None, PerturbationKind::Log, PerturbationKind::Log2]),
        len in 1u64..5000,
    ) {
        let s = TwoPointSchedule::two_point([1.0, 0.0], [p, 1.0 - p], kind).unwrap();
        let choices = greedy_choices(&s, len, RealizationTarget::Cumulative).unwrap();
        let (mut count, mut target) = (0u64, 0.0f64);
        for (i, &c) in choices.iter().enumerate() {
            count += c as u64;
            target += s.probability(0, i as u64 + 1);
            prop_assert!((count as f64 - target).abs() <= 0.5 + 1e-9);
        }
    }
}

#[test]
fn constant_remainders_are_bounded_and_zero_remainders_decay() {
    let cps: Vec<u64> = Checkpoints::geometric(10, 2.0, 1_000_000)
        .unwrap()
        .as_slice()
        .to_vec();
    let params = ClassifierParams::default();
    let bounded = classify_remainders(&cps, vec![0.3f64; cps.len()], &params);
    assert_eq!(bounded.class, RemainderClass::Bounded);
    let vanishing = classify_remainders(&cps, vec![0.0f64; cps.len()], &params);
    assert_eq!(vanishing.class, RemainderClass::Decaying);
}

#[test]
fn realized_summatory_tracks_schedule() {
    let n = 10_000;
    for s in [paper_log_example::<f64>(), paper_log2_example()] {
        let spread = (s.values()[0] - s.values()[1]).abs();
        let f = summatoria::synth::realize_greedy(&s, n, RealizationTarget::Proportion).unwrap();
        let mut realized = 0.0;
        for (k, v) in (1..=n).zip(f.values(1, n).unwrap()) {
            realized += v;
            assert!(
                (realized - schedule_summatory(&s, k)).abs() <= spread,
                "n = {k}"
            );
        }
    }
}

#[test]
fn power_law_slopes_are_recovered() {
    let cps: Vec<u64> = Checkpoints::geometric(100, 2.0, 10_000_000)
        .unwrap()
        .as_slice()
        .to_vec();
    for alpha in [0.5, 1.0, 2.0] {
        let r: Vec<f64> = cps.iter().map(|&n| (n as f64).powf(-alpha)).collect();
        let fit = classify_remainders(&cps, r, &ClassifierParams::default());
        assert_eq!(fit.class, RemainderClass::Decaying);
        assert!((fit.loglog_slope.unwrap() + alpha).abs() <= 0.05);
    }
}
