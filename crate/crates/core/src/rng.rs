//! Reproducible per-trial random streams.
//!
//! Every trial draws from ChaCha20 keyed by `seed_from_u64(master_seed)`
//! with the ChaCha stream id set to the trial index, so trial `t` of a run
//! is identical no matter which worker executes it or in which order.

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedStream {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedStream {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self { master_seed, trial_index }
    }

    pub fn rng(&self) -> TrialRng {
        let mut inner = ChaCha20Rng::seed_from_u64(self.master_seed);
        inner.set_stream(self.trial_index);
        TrialRng { inner }
    }
}

/// Generator for one trial; not shared between threads.
pub struct TrialRng {
    inner: ChaCha20Rng,
}

impl TrialRng {
    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normals via Box–Muller.
    #[inline]
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (radius * c, radius * s)
    }

    /// Centred complex Gaussian with `E|g|^2 = variance`.
    #[inline]
    pub fn complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let (x, y) = self.normal_pair();
        let s = (0.5 * variance).sqrt();
        Complex64::new(s * x, s * y)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
