//! Numerical checks of the normal-limit conditions on summatory functions.

pub mod gap;
pub mod quadrature;
pub mod remainder;
pub mod verdict;

pub use gap::euler_maclaurin_gap;
pub use quadrature::integrate;
pub use remainder::{
    classify_remainders, ols_slope, ClassifierParams, RemainderClass, RemainderFit,
};
pub use verdict::{
    assertion4_check, estimate_mu0, full_verdict, mean_rate_fit, remainders, FitSummary, KsPoint,
    LimitVerdict, Mu0Estimate, VerdictOptions, VerdictReport,
};
