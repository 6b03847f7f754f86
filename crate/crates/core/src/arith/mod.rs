//! Möbius and Liouville values and their summatory traces.

pub mod oracle;
pub mod sieve;
pub mod trace;

pub use oracle::{factorize, liouville_oracle, mobius_oracle, ORACLE_BOUND};
pub use sieve::{sieve_block, Sieve, SieveBlock, SieveConfig};
pub use trace::{
    liouville_trace, mertens_trace, scan_partial_sums, summatory_trace, weighted_mobius_trace,
    AccumulationKind, Checkpoints, SummatoryTrace,
};
