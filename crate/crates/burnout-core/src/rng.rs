//! Reproducible random number streams.
//!
//! A [`RngHandle`] names one logical stream by (seed, stream id). Every
//! consumer derives its generator from the handle plus a stage index, so the
//! same handle reproduces the same draws bit for bit no matter how work is
//! split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

/// Identifies one logical random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngHandle {
    pub seed: u64,
    pub stream: u64,
}

impl RngHandle {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Derived handle for an independent replica of this stream.
    pub fn replica(&self, index: u64) -> Self {
        Self {
            seed: self.seed,
            stream: mix64(self.stream, index),
        }
    }

    /// Generator for one stage of a computation under this handle.
    ///
    /// Distinct stages never share state; the key is (seed, stream, stage).
    pub fn stage_rng(&self, stage: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        key[16..24].copy_from_slice(&stage.to_le_bytes());
        key[24..32].copy_from_slice(&0x6275_726e_6f75_7421u64.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }
}

/// SplitMix64-style finalizer used for replica stream derivation.
fn mix64(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Unit-rate exponential draw.
pub fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Exp1)
}
