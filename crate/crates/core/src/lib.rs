//! Summatory arithmetic functions at scale, and numerical checks of the
//! conditions under which such a function has a normal limit law.
//!
//! * [`arith`]: Möbius/Liouville by segmented sieve and trial-division
//!   oracle, summatory traces `M(x)`, `L(x)`, `Σ μ(k)/k`.
//! * [`empirical`]: the uniform measure on `{1..n}`: means, moments, CDF,
//!   Kolmogorov–Smirnov distance, lag-correlation independence estimator.
//! * [`limit`]: remainder classification, mean-rate and asymptotic-form
//!   checks, sum-minus-integral gaps, combined verdicts.
//! * [`synth`]: perturbed two-point schedules and greedy realizations.
//!
//! Statistics are generic over [`Scalar`] (`f32`/`f64`); the aliases below
//! fix the scalar to `f64`.

// `!(x > y)` rejects NaN along with the failing comparison
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod empirical;
pub mod error;
pub mod limit;
pub mod scalar;
pub mod sum;
pub mod synth;

pub use arith::trace;
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use sum::CompensatedSum;

pub type Sequence = empirical::ArithmeticSequence<f64>;
pub type Trace = arith::SummatoryTrace<f64>;
pub type Distribution = empirical::EmpiricalDistribution<f64>;
pub type Fit = limit::RemainderFit<f64>;
pub type Verdict = limit::LimitVerdict<f64>;
pub type Schedule = synth::TwoPointSchedule<f64>;
