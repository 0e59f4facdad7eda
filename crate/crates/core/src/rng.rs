//! Deterministic random streams.
//!
//! Every trial of an experiment owns a ChaCha8 stream keyed by the master
//! seed and selected by the trial index, so a trial's draws depend only on
//! `(master_seed, trial)` and never on scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A single-owner stream of uniform variates.
#[derive(Clone, Debug)]
pub struct Stream {
    inner: ChaCha8Rng,
}

impl Stream {
    /// Stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    /// Substream for trial `trial` under `master_seed`.
    pub fn for_trial(master_seed: u64, trial: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(trial);
        Self { inner }
    }

    /// Uniform variate on the open interval (0, 1).
    ///
    /// Uses the top 53 bits and centres them in their cell, so neither 0 nor
    /// 1 can be produced.
    #[inline]
    pub fn open01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * SCALE
    }
}

impl RngCore for Stream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
