//! Deterministic bit generators G: seed → bitstring, with output longer
//! than the seed.
//!
//! Three constructions: a constant-zero generator (trivially broken), an
//! LCG least-significant-bit generator (structurally weak), and a
//! 20-round add-rotate-xor stream generator (strong at desk scale).
//! All three are stream-like: shorter outputs are prefixes of longer ones.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::Error;

/// A deterministic, expanding bit generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Generator {
    Zero,
    LcgLsb { a: u64, c: u64 },
    ArxStream,
}

/// Odd multiplier/increment pair from Knuth's MMIX, used as the default
/// weak instance.
pub const LCG_DEFAULT_A: u64 = 6364136223846793005;
pub const LCG_DEFAULT_C: u64 = 1442695040888963407;

pub fn make_zero_generator() -> Generator {
    Generator::Zero
}

pub fn make_lcg_lsb_generator(a: u64, c: u64) -> Result<Generator, Error> {
    if a % 2 == 0 {
        return Err(Error::InvalidParameter("LCG multiplier must be odd".into()));
    }
    Ok(Generator::LcgLsb { a, c })
}

pub fn make_arx_stream_generator() -> Generator {
    Generator::ArxStream
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::Zero => "zero",
            Generator::LcgLsb { .. } => "lcg-lsb",
            Generator::ArxStream => "arx-stream",
        }
    }

    /// Minimum admissible seed length in bits.
    pub fn min_seed_len(&self) -> usize {
        match self {
            Generator::Zero => 0,
            _ => 1,
        }
    }

    /// Maximum seed length the construction's state can absorb.
    pub fn max_seed_len(&self) -> usize {
        match self {
            Generator::Zero => usize::MAX,
            Generator::LcgLsb { .. } => 64,
            Generator::ArxStream => 256,
        }
    }

    pub fn check_seed(&self, seed: &BitString) -> Result<(), Error> {
        if seed.len() < self.min_seed_len() {
            return Err(Error::SeedTooShort {
                min: self.min_seed_len(),
                got: seed.len(),
            });
        }
        if seed.len() > self.max_seed_len() {
            return Err(Error::InvalidParameter(format!(
                "seed of {} bits exceeds the {}-bit state capacity",
                seed.len(),
                self.max_seed_len()
            )));
        }
        Ok(())
    }

    /// Deterministic keystream of exactly `out_len` bits.
    pub fn generate(&self, seed: &BitString, out_len: usize) -> Result<BitString, Error> {
        self.check_seed(seed)?;
        if out_len == 0 {
            return Err(Error::UnsupportedLength("out_len must be >= 1".into()));
        }
        let bits = match self {
            Generator::Zero => vec![0u8; out_len],
            Generator::LcgLsb { a, c } => {
                let mut state = seed_to_word(seed);
                (0..out_len)
                    .map(|_| {
                        state = state.wrapping_mul(*a).wrapping_add(*c);
                        (state & 1) as u8
                    })
                    .collect()
            }
            Generator::ArxStream => arx_keystream(seed, out_len),
        };
        Ok(BitString::from_bits(&bits).unwrap())
    }
}

/// Seed bits fill a 64-bit word most-significant-first, zero-padded.
fn seed_to_word(seed: &BitString) -> u64 {
    let mut w = 0u64;
    for (i, &b) in seed.as_slice().iter().enumerate() {
        w |= (b as u64) << (63 - i);
    }
    w
}

/// Seed bits fill the eight 32-bit key words most-significant-first,
/// zero-padded.
fn seed_to_key_words(seed: &BitString) -> [u32; 8] {
    let mut key = [0u32; 8];
    for (i, &b) in seed.as_slice().iter().enumerate() {
        key[i / 32] |= (b as u32) << (31 - (i % 32));
    }
    key
}

fn rotl(x: u32, n: u32) -> u32 {
    x.rotate_left(n)
}

fn quarter_round(s: &mut [u32; 16], a: usize, b: usize, c: usize, d: usize) {
    s[a] = s[a].wrapping_add(s[b]);
    s[d] = rotl(s[d] ^ s[a], 16);
    s[c] = s[c].wrapping_add(s[d]);
    s[b] = rotl(s[b] ^ s[c], 12);
    s[a] = s[a].wrapping_add(s[b]);
    s[d] = rotl(s[d] ^ s[a], 8);
    s[c] = s[c].wrapping_add(s[d]);
    s[b] = rotl(s[b] ^ s[c], 7);
}

/// One 512-bit block of the 20-round ARX permutation in counter mode.
fn arx_block(key: &[u32; 8], counter: u64) -> [u32; 16] {
    // The standard public-domain "expand 32-byte k" constants.
    const SIGMA: [u32; 4] = [0x61707865, 0x3320646e, 0x79622d32, 0x6b206574];
    let mut state = [0u32; 16];
    state[..4].copy_from_slice(&SIGMA);
    state[4..12].copy_from_slice(key);
    state[12] = counter as u32;
    state[13] = (counter >> 32) as u32;
    // words 14..15 stay zero (no nonce; the key is the whole secret)
    let initial = state;
    for _ in 0..10 {
        quarter_round(&mut state, 0, 4, 8, 12);
        quarter_round(&mut state, 1, 5, 9, 13);
        quarter_round(&mut state, 2, 6, 10, 14);
        quarter_round(&mut state, 3, 7, 11, 15);
        quarter_round(&mut state, 0, 5, 10, 15);
        quarter_round(&mut state, 1, 6, 11, 12);
        quarter_round(&mut state, 2, 7, 8, 13);
        quarter_round(&mut state, 3, 4, 9, 14);
    }
    for (s, i) in state.iter_mut().zip(initial) {
        *s = s.wrapping_add(i);
    }
    state
}

/// Output bits: each block's words in order, each word emitted
/// most-significant-bit first.
fn arx_keystream(seed: &BitString, out_len: usize) -> Vec<u8> {
    let key = seed_to_key_words(seed);
    let mut bits = Vec::with_capacity(out_len);
    let mut counter = 0u64;
    while bits.len() < out_len {
        let block = arx_block(&key, counter);
        counter += 1;
        'words: for w in block {
            for i in (0..32).rev() {
                bits.push(((w >> i) & 1) as u8);
                if bits.len() == out_len {
                    break 'words;
                }
            }
        }
    }
    bits
}
