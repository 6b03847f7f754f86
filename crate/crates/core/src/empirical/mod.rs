//! Arithmetic functions viewed as random variables on `{1, …, n}` with the
//! uniform measure.

pub mod calibration;
pub mod distribution;
pub mod independence;
pub mod normal;
pub mod sequence;

pub use distribution::{
    empirical_cdf, empirical_mean, empirical_moments, ks_distance, EmpiricalDistribution, Moments,
    Reference,
};
pub use independence::{
    independence_estimator, independence_table, lag_covariance, LagCorrelation, DEFAULT_LAGS,
};
pub use normal::standard_normal_cdf;
pub use sequence::{ArithmeticSequence, Chunk, ClosedForm, SieveFunction};
