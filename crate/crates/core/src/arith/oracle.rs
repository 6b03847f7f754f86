//! Per-integer trial-division factorization. Slow but obviously correct; used
//! to cross-check the sieve.

use crate::error::{Error, Result};

/// Largest argument the trial-division oracles accept.
pub const ORACLE_BOUND: u64 = 10_000_000;

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    check(n)?;
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(factors)
}

/// Möbius function by factorization.
pub fn mobius_oracle(n: u64) -> Result<i8> {
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e >= 2) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Liouville function `(-1)^Ω(n)`, Ω counting prime factors with multiplicity.
pub fn liouville_oracle(n: u64) -> Result<i8> {
    let omega: u32 = factorize(n)?.iter().map(|&(_, e)| e).sum();
    Ok(if omega.is_multiple_of(2) { 1 } else { -1 })
}

fn check(n: u64) -> Result<()> {
    if n == 0 || n > ORACLE_BOUND {
        return Err(Error::Bound {
            what: "oracle argument",
            value: n,
            bound: ORACLE_BOUND,
        });
    }
    Ok(())
}
