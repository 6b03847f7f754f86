//! Built-in consistency suites: sieve against trial division, number-theoretic
//! identities and the KS calibration pair.

use std::fmt::Write;

use summatoria::arith::{liouville_oracle, mobius_oracle, Sieve};
use summatoria::empirical::calibration::{normal_sample, uniform_sample, KS_CRITICAL_1PCT};
use summatoria::empirical::{empirical_cdf, ks_distance, Reference};
use summatoria::trace::{mertens_trace, Checkpoints};

type Check = Result<String, String>;
type Suite<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn sieve_vs_oracle(sieve: &Sieve) -> Check {
    let block = sieve.block(1, 100_000).map_err(|e| e.to_string())?;
    for k in 1..=100_000u64 {
        let i = (k - 1) as usize;
        if block.mu()[i] != mobius_oracle(k).unwrap()
            || block.lambda()[i] != liouville_oracle(k).unwrap()
        {
            return Err(format!("mismatch at {k}"));
        }
    }
    Ok("n <= 100000".into())
}

fn divisor_identity(sieve: &Sieve) -> Check {
    let block = sieve.block(1, 10_000).map_err(|e| e.to_string())?;
    let mu = block.mu();
    let mut sums = vec![0i64; 10_001];
    for d in 1..=10_000usize {
        for m in (d..=10_000).step_by(d) {
            sums[m] += mu[d - 1] as i64;
        }
    }
    match (1..=10_000).find(|&n| sums[n] != (n == 1) as i64) {
        None => Ok("n <= 10000".into()),
        Some(n) => Err(format!("fails at {n}")),
    }
}

fn multiplicativity(sieve: &Sieve) -> Check {
    let block = sieve.block(1, 1_000_000).map_err(|e| e.to_string())?;
    let mu = |k: u64| block.mu()[(k - 1) as usize] as i32;
    let lambda = |k: u64| block.lambda()[(k - 1) as usize] as i32;
    for m in 1..=1000u64 {
        for n in 1..=1000u64 {
            if lambda(m * n) != lambda(m) * lambda(n) {
                return Err(format!("lambda({m}·{n})"));
            }
            if gcd(m, n) == 1 && mu(m * n) != mu(m) * mu(n) {
                return Err(format!("mu({m}·{n})"));
            }
        }
    }
    Ok("m, n <= 1000".into())
}

fn trace_additivity(sieve: &Sieve) -> Check {
    let points: Vec<u64> = (1..=40).map(|j| j * 2_500).collect();
    let c = Checkpoints::explicit(points.clone()).map_err(|e| e.to_string())?;
    let trace = mertens_trace::<f64>(100_000, &c).map_err(|e| e.to_string())?;
    let values = trace.exact_values().expect("mertens trace is exact");
    let mut prev = (0u64, 0i64);
    for (&n, &s) in points.iter().zip(values) {
        let block = sieve.block(prev.0 + 1, n).map_err(|e| e.to_string())?;
        let direct: i64 = block.mu().iter().map(|&x| x as i64).sum();
        if s - prev.1 != direct {
            return Err(format!("segment ({}, {n}]", prev.0));
        }
        prev = (n, s);
    }
    let anchors = [(10u64, -1i64), (100, 1)];
    let c = Checkpoints::explicit(anchors.iter().map(|a| a.0).collect()).unwrap();
    let t = mertens_trace::<f64>(100, &c).map_err(|e| e.to_string())?;
    if t.exact_values() != Some(&[-1, 1][..]) {
        return Err("M(10), M(100)".into());
    }
    Ok("40 segments, M(10) = -1, M(100) = 1".into())
}

fn ks_calibration(seed: u64) -> Check {
    let size = 10_000;
    let critical = KS_CRITICAL_1PCT / (size as f64).sqrt();
    let d = |sample: Vec<f64>| {
        ks_distance(&empirical_cdf(&sample).unwrap(), Reference::StandardNormal)
            .map_err(|e| e.to_string())
    };
    let normal = d(normal_sample(seed, size))?;
    let uniform = d(uniform_sample(seed, size))?;
    let detail =
        format!("seed {seed}: normal {normal:.5}, uniform {uniform:.5}, critical {critical}");
    if normal <= critical && uniform > critical {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Runs every suite; returns the report and whether all passed.
pub fn run(sieve: &Sieve, seed: u64) -> (String, bool) {
    let suites: [Suite; 5] = [
        ("sieve vs oracle", Box::new(|| sieve_vs_oracle(sieve))),
        ("divisor identity", Box::new(|| divisor_identity(sieve))),
        ("multiplicativity", Box::new(|| multiplicativity(sieve))),
        ("trace additivity", Box::new(|| trace_additivity(sieve))),
        ("ks calibration", Box::new(|| ks_calibration(seed))),
    ];
    let mut report = String::new();
    let mut failed = 0;
    for (name, suite) in &suites {
        match suite() {
            Ok(detail) => writeln!(report, "PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                writeln!(report, "FAIL {name}: {detail}")
            }
        }
        .expect("writing to a String");
    }
    writeln!(
        report,
        "selftest: {} passed, {failed} failed",
        suites.len() - failed
    )
    .expect("writing to a String");
    (report, failed == 0)
}
