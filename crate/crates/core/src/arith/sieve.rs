//! Segmented sieve for the Möbius and Liouville functions.
//!
//! Each block keeps, per entry, the product of the prime powers found so far
//! together with the Möbius sign and the parity of Ω. After every prime up to
//! √hi has been applied, an entry whose product falls short of the integer
//! itself has exactly one remaining prime factor above √hi.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_BLOCK_SIZE: usize = 1 << 20;
pub const DEFAULT_BOUND: u64 = 1_000_000_000;
pub const DEFAULT_MAX_BLOCK_LEN: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Entries per streamed block.
    pub block_size: usize,
    /// Largest integer the sieve will evaluate.
    pub bound: u64,
    /// Memory budget for a single block, in entries.
    pub max_block_len: usize,
    /// Worker threads used for streaming; 1 means no pool.
    pub threads: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            block_size: DEFAULT_BLOCK_SIZE,
            bound: DEFAULT_BOUND,
            max_block_len: DEFAULT_MAX_BLOCK_LEN,
            threads: 1,
        }
    }
}

/// Möbius and Liouville values on the closed range `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveBlock {
    lo: u64,
    hi: u64,
    mu: Vec<i8>,
    lambda: Vec<i8>,
}

impl SieveBlock {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn mu(&self) -> &[i8] {
        &self.mu
    }

    pub fn lambda(&self) -> &[i8] {
        &self.lambda
    }

    /// μ(k) for `lo <= k <= hi`.
    pub fn mu_at(&self, k: u64) -> Option<i8> {
        self.index(k).map(|i| self.mu[i])
    }

    /// λ(k) for `lo <= k <= hi`.
    pub fn lambda_at(&self, k: u64) -> Option<i8> {
        self.index(k).map(|i| self.lambda[i])
    }

    fn index(&self, k: u64) -> Option<usize> {
        (self.lo..=self.hi)
            .contains(&k)
            .then(|| (k - self.lo) as usize)
    }
}

/// Block sieve engine: base primes up to √bound plus streaming configuration.
#[derive(Debug)]
pub struct Sieve {
    config: SieveConfig,
    primes: Vec<u64>,
    pool: Option<rayon::ThreadPool>,
}

impl Sieve {
    pub fn new(config: SieveConfig) -> Result<Self> {
        if config.block_size == 0 {
            return Err(Error::argument("block size must be positive"));
        }
        if config.threads == 0 {
            return Err(Error::argument("thread count must be positive"));
        }
        if config.block_size > config.max_block_len {
            return Err(Error::Capacity(format!(
                "block size {} exceeds the block memory budget of {} entries",
                config.block_size, config.max_block_len
            )));
        }
        if config.bound == 0 || config.bound > u64::MAX / 2 {
            return Err(Error::argument("sieve bound must be in [1, 2^63)"));
        }
        let primes = primes_up_to(config.bound.isqrt());
        let pool = if config.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.threads)
                    .build()
                    .map_err(|e| Error::Capacity(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self {
            config,
            primes,
            pool,
        })
    }

    pub fn config(&self) -> &SieveConfig {
        &self.config
    }

    pub fn bound(&self) -> u64 {
        self.config.bound
    }

    /// Sieves `[lo, hi]` in one block.
    pub fn block(&self, lo: u64, hi: u64) -> Result<SieveBlock> {
        self.check_range(lo, hi)?;
        let len = hi - lo + 1;
        if len > self.config.max_block_len as u64 {
            return Err(Error::Capacity(format!(
                "block of {len} entries exceeds the budget of {} entries",
                self.config.max_block_len
            )));
        }
        Ok(self.sieve_unchecked(lo, hi))
    }

    /// Streams `[lo, hi]` in blocks of `block_size`, visiting them in
    /// increasing order. With more than one thread, batches of blocks are
    /// sieved concurrently; the visit order is unchanged.
    pub fn for_each_block<F>(&self, lo: u64, hi: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(&SieveBlock) -> Result<()>,
    {
        self.check_range(lo, hi)?;
        let step = self.config.block_size as u64;
        let ranges: Vec<(u64, u64)> = (0..)
            .map(|i| lo + i * step)
            .take_while(|&start| start <= hi)
            .map(|start| (start, hi.min(start + step - 1)))
            .collect();
        match &self.pool {
            None => {
                for &(a, b) in &ranges {
                    visit(&self.sieve_unchecked(a, b))?;
                }
            }
            Some(pool) => {
                let batch = 2 * self.config.threads;
                for chunk in ranges.chunks(batch) {
                    let blocks: Vec<SieveBlock> = pool.install(|| {
                        chunk
                            .par_iter()
                            .map(|&(a, b)| self.sieve_unchecked(a, b))
                            .collect()
                    });
                    for block in &blocks {
                        visit(block)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo == 0 || lo > hi {
            return Err(Error::Range {
                lo,
                hi,
                reason: "require 1 <= lo <= hi".into(),
            });
        }
        if hi > self.config.bound {
            return Err(Error::Bound {
                what: "sieve upper end",
                value: hi,
                bound: self.config.bound,
            });
        }
        Ok(())
    }

    fn sieve_unchecked(&self, lo: u64, hi: u64) -> SieveBlock {
        let len = (hi - lo + 1) as usize;
        let mut product = vec![1u64; len];
        let mut mu = vec![1i8; len];
        let mut odd_omega = vec![false; len];
        let root = hi.isqrt();

        for &p in self.primes.iter().take_while(|&&p| p <= root) {
            let mut i = first_multiple_offset(lo, p);
            while i < len {
                product[i] *= p;
                mu[i] = -mu[i];
                odd_omega[i] = !odd_omega[i];
                i += p as usize;
            }
            // higher powers: each contributes one more factor p
            let mut pk = p * p;
            while pk <= hi {
                let mut i = first_multiple_offset(lo, pk);
                while i < len {
                    product[i] *= p;
                    mu[i] = 0;
                    odd_omega[i] = !odd_omega[i];
                    i += pk as usize;
                }
                match pk.checked_mul(p) {
                    Some(next) => pk = next,
                    None => break,
                }
            }
        }

        let mut lambda = vec![1i8; len];
        for i in 0..len {
            if product[i] != lo + i as u64 {
                mu[i] = -mu[i];
                odd_omega[i] = !odd_omega[i];
            }
            if odd_omega[i] {
                lambda[i] = -1;
            }
        }
        SieveBlock { lo, hi, mu, lambda }
    }
}

/// Sieves `[lo, hi]` with the default configuration.
pub fn sieve_block(lo: u64, hi: u64) -> Result<SieveBlock> {
    Sieve::new(SieveConfig::default())?.block(lo, hi)
}

fn first_multiple_offset(lo: u64, m: u64) -> usize {
    (lo.div_ceil(m) * m - lo) as usize
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
