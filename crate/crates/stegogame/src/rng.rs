//! Deterministic randomness with seed splitting.
//!
//! Every Monte Carlo trial gets its own sub-seed derived from
//! `(master_seed, stream, index)`, so aggregate results are identical
//! regardless of execution order or degree of parallelism.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// An owned, splittable source of randomness. Single-owner by contract:
/// never shared between concurrent tasks.
pub struct RandomSource {
    inner: ChaCha8Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        RandomSource {
            inner: ChaCha8Rng::seed_from_u64(splitmix64(seed)),
        }
    }

    /// Derive an independent source for one (stream, index) cell of a
    /// master-seeded experiment.
    pub fn split(master_seed: u64, stream: u64, index: u64) -> Self {
        let mut key = [0u8; 32];
        let a = splitmix64(master_seed ^ 0x9e37_79b9_7f4a_7c15);
        let b = splitmix64(a ^ stream);
        let c = splitmix64(b ^ index);
        let d = splitmix64(c);
        key[..8].copy_from_slice(&a.to_le_bytes());
        key[8..16].copy_from_slice(&b.to_le_bytes());
        key[16..24].copy_from_slice(&c.to_le_bytes());
        key[24..].copy_from_slice(&d.to_le_bytes());
        RandomSource {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn gen_range(&mut self, range: std::ops::Range<u8>) -> u8 {
        use rand::Rng;
        self.inner.gen_range(range)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

impl RngCore for RandomSource {
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

/// Derive a per-row sub-seed from a master seed and a row index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ splitmix64(index ^ 0xa076_1d64_78bd_642f))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
