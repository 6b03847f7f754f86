//! The uniform empirical measure on `{1, …, n}` and statistics over it.

use crate::empirical::normal::standard_normal_cdf;
use crate::empirical::sequence::{ArithmeticSequence, Chunk};
use crate::error::{Error, Result};
use crate::sum::{pivoted_mean, CompensatedSum};
use crate::trace::{summatory_trace, Checkpoints};
use crate::Scalar;

/// Sorted sample with its mean and population variance.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution<T> {
    sample: Vec<T>,
    mean: T,
    variance: T,
}

impl<T: Scalar> EmpiricalDistribution<T> {
    pub fn new(values: &[T]) -> Result<Self> {
        Self::from_vec(values.to_vec())
    }

    pub fn from_vec(mut sample: Vec<T>) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::argument(
                "empirical distribution needs a nonempty sample",
            ));
        }
        if sample.iter().any(|x| !x.is_finite()) {
            return Err(Error::argument("sample contains non-finite values"));
        }
        sample.sort_by(|a, b| a.partial_cmp(b).expect("finite values are ordered"));
        let mean = pivoted_mean(&sample).expect("nonempty");
        let squares: CompensatedSum<T> = sample.iter().map(|&x| (x - mean) * (x - mean)).collect();
        let variance = squares.value() / T::from_count(sample.len() as u64);
        Ok(Self {
            sample,
            mean,
            variance,
        })
    }

    pub fn n(&self) -> usize {
        self.sample.len()
    }

    pub fn sample(&self) -> &[T] {
        &self.sample
    }

    pub fn mean(&self) -> T {
        self.mean
    }

    /// Population variance (divides by n).
    pub fn variance(&self) -> T {
        self.variance
    }

    pub fn std_dev(&self) -> T {
        self.variance.sqrt()
    }

    /// `F̂(x)`: share of the sample `<= x` (right-continuous).
    pub fn cdf(&self, x: T) -> T {
        let count = self.sample.partition_point(|&s| s <= x);
        T::from_count(count as u64) / T::from_count(self.n() as u64)
    }

    /// `F̂(x⁻)`: share of the sample strictly below `x`.
    pub fn cdf_below(&self, x: T) -> T {
        let count = self.sample.partition_point(|&s| s < x);
        T::from_count(count as u64) / T::from_count(self.n() as u64)
    }
}

/// Builds the empirical distribution of `values`.
pub fn empirical_cdf<T: Scalar>(values: &[T]) -> Result<EmpiricalDistribution<T>> {
    EmpiricalDistribution::new(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Φ, after standardizing the sample by its own mean and deviation.
    StandardNormal,
    /// Uniform(0, 1), no standardization.
    Uniform,
}

/// Kolmogorov–Smirnov distance between `dist` and `reference`.
pub fn ks_distance<T: Scalar>(dist: &EmpiricalDistribution<T>, reference: Reference) -> Result<T> {
    let (shift, scale) = match reference {
        Reference::StandardNormal => {
            if !(dist.variance() > T::zero()) {
                return Err(Error::DegenerateSample(
                    "zero variance, cannot standardize for the normal reference".into(),
                ));
            }
            (dist.mean(), dist.std_dev())
        }
        Reference::Uniform => (T::zero(), T::one()),
    };
    let cdf = |x: T| match reference {
        Reference::StandardNormal => standard_normal_cdf((x - shift) / scale),
        Reference::Uniform => x.max(T::zero()).min(T::one()),
    };
    let n = dist.n();
    let nf = T::from_count(n as u64);
    let sample = dist.sample();
    let mut d = T::zero();
    let mut i = 0;
    while i < n {
        let x = sample[i];
        let mut j = i + 1;
        while j < n && sample[j] == x {
            j += 1;
        }
        let f = cdf(x);
        let below = T::from_count(i as u64) / nf;
        let at = T::from_count(j as u64) / nf;
        d = d.max((at - f).abs()).max((below - f).abs());
        i = j;
    }
    Ok(d)
}

/// `M[f, n] = S(n)/n`; exact-integer `S(n)` for integer-valued `f`.
pub fn empirical_mean<T: Scalar>(f: &ArithmeticSequence<T>, n: u64) -> Result<T> {
    check_bound(f, n)?;
    let trace = summatory_trace(f, n, &Checkpoints::explicit(vec![n])?)?;
    Ok(trace.value(0) / T::from_count(n))
}

/// Mean and population variance of `f(1), …, f(n)` under the uniform measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments<T> {
    pub mean: T,
    pub variance: T,
}

pub fn empirical_moments<T: Scalar>(f: &ArithmeticSequence<T>, n: u64) -> Result<Moments<T>> {
    let mean = empirical_mean(f, n)?;
    // accumulate around f(1) so a constant shift cancels exactly
    let pivot = f.value(1)?;
    let mut first = CompensatedSum::<T>::new();
    let mut second = CompensatedSum::<T>::new();
    f.for_each_chunk(1, n, |_, chunk| {
        let mut add = |x: T| {
            let d = x - pivot;
            first.add(d);
            second.add(d * d);
        };
        match chunk {
            Chunk::Integer(v) => v.iter().for_each(|&x| add(T::from_i8(x).unwrap())),
            Chunk::Real(v) => v.iter().for_each(|&x| add(x)),
        }
        Ok(())
    })?;
    let nf = T::from_count(n);
    let shifted_mean = first.value() / nf;
    let variance = (second.value() / nf - shifted_mean * shifted_mean).max(T::zero());
    Ok(Moments { mean, variance })
}

fn check_bound<T: Scalar>(f: &ArithmeticSequence<T>, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    if n > f.bound() {
        return Err(Error::Bound {
            what: "n",
            value: n,
            bound: f.bound(),
        });
    }
    Ok(())
}
