//! Sum-minus-integral gap `Σ_{k<=n} f(k) − ∫_1^n f(t) dt` for closed-form `f`.

use crate::empirical::sequence::ClosedForm;
use crate::error::{Error, Result};
use crate::limit::quadrature::integrate;
use crate::limit::remainder::{classify_remainders, ClassifierParams, RemainderFit};
use crate::sum::CompensatedSum;
use crate::trace::Checkpoints;
use crate::Scalar;

/// Absolute error budget for the integral at the largest checkpoint.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// Gap at each checkpoint, classified. The integral uses the antiderivative
/// when `f` has one and adaptive quadrature otherwise; the lower limit is 1.
pub fn euler_maclaurin_gap<T: Scalar>(
    f: &ClosedForm<T>,
    n: u64,
    checkpoints: &Checkpoints,
    params: &ClassifierParams<T>,
) -> Result<RemainderFit<T>> {
    if checkpoints.last() > n {
        return Err(Error::argument(format!(
            "largest checkpoint {} exceeds N = {n}",
            checkpoints.last()
        )));
    }
    let pieces = checkpoints.len() as f64;
    let one = T::one();
    let mut sum = CompensatedSum::new();
    let mut integral = CompensatedSum::new();
    let mut k = 1u64;
    let mut from = one;
    let mut gaps = Vec::with_capacity(checkpoints.len());
    for &target in checkpoints.as_slice() {
        while k <= target {
            sum.add(f.at(k));
            k += 1;
        }
        let to = T::from_count(target);
        let piece = match f.exact_integral(from, to) {
            Some(v) => v,
            None => integrate(
                |t| f.eval(t),
                from,
                to,
                T::lit(QUADRATURE_TOLERANCE / pieces),
            )?,
        };
        integral.add(piece);
        from = to;
        gaps.push(sum.value() - integral.value());
    }
    Ok(classify_remainders(checkpoints.as_slice(), gaps, params))
}
