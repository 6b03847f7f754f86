//! Seeded reference samples for calibrating the KS harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `size` standard normal draws from a ChaCha8 stream seeded with `seed`.
pub fn normal_sample(seed: u64, size: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| rng.sample(StandardNormal)).collect()
}

/// `size` uniform(0, 1) draws from a ChaCha8 stream seeded with `seed`.
pub fn uniform_sample(seed: u64, size: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| rng.random::<f64>()).collect()
}

/// 1% critical coefficient of the one-sample KS statistic, `D·√n`.
pub const KS_CRITICAL_1PCT: f64 = 1.63;
