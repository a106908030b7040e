//! Exact bit-level words over {0,1}: XOR, concatenation, slicing, text
//! encodings, and uniform sampling.
//!
//! Words are immutable after construction. Bit order is positional:
//! index 0 is the leftmost (most significant) symbol in text renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rng::RandomSource;

/// A fixed-length word over the binary alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    bits: Vec<u8>,
}

/// Text encodings for [`BitString`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// One ASCII `0`/`1` per bit. Defined for every length.
    BinaryText,
    /// Lowercase hex digits, four bits each. Length must be divisible by 4.
    HexText,
}

impl BitString {
    /// The empty word ε.
    pub fn empty() -> Self {
        BitString { bits: Vec::new() }
    }

    /// All-zero word of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString { bits: vec![0; len] }
    }

    /// Build from a slice of 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Result<Self, Error> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("bit values must be 0 or 1".into()));
        }
        Ok(BitString { bits: bits.to_vec() })
    }

    /// Build the length-`len` word whose bits are the big-endian binary
    /// expansion of `value` (bit 0 of the word is the most significant).
    pub fn from_value(value: u64, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| ((value >> (len - 1 - i)) & 1) as u8)
            .collect();
        BitString { bits }
    }

    /// Interpret the word as a big-endian integer. Panics over 64 bits.
    pub fn to_value(&self) -> u64 {
        assert!(self.len() <= 64, "word too long for u64");
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at position `i` (0 = leftmost).
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    /// Bitwise XOR of two equal-length words.
    pub fn xor(&self, other: &BitString) -> Result<BitString, Error> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitString { bits })
    }

    /// Concatenation product `self · other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    /// The sub-word `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString {
            bits: self.bits[start..end].to_vec(),
        }
    }

    /// True iff `prefix` is a prefix of this word.
    pub fn has_prefix(&self, prefix: &BitString) -> bool {
        self.len() >= prefix.len() && self.bits[..prefix.len()] == prefix.bits[..]
    }

    /// Uniform sample over `{0,1}^length`.
    pub fn sample_uniform(length: usize, rng: &mut RandomSource) -> BitString {
        let mut bits = Vec::with_capacity(length);
        while bits.len() < length {
            let mut word = rng.next_u64();
            for _ in 0..64.min(length - bits.len()) {
                bits.push((word & 1) as u8);
                word >>= 1;
            }
        }
        BitString { bits }
    }

    /// Parse from text in the given format.
    pub fn parse(text: &str, format: Format) -> Result<BitString, Error> {
        let text = text.trim();
        match format {
            Format::BinaryText => {
                let mut bits = Vec::with_capacity(text.len());
                for c in text.chars() {
                    match c {
                        '0' => bits.push(0),
                        '1' => bits.push(1),
                        _ => {
                            return Err(Error::Parse(format!(
                                "illegal character {c:?} in binary text"
                            )))
                        }
                    }
                }
                Ok(BitString { bits })
            }
            Format::HexText => {
                let mut bits = Vec::with_capacity(text.len() * 4);
                for c in text.chars() {
                    let v = c
                        .to_digit(16)
                        .ok_or_else(|| Error::Parse(format!("illegal hex digit {c:?}")))?;
                    for i in (0..4).rev() {
                        bits.push(((v >> i) & 1) as u8);
                    }
                }
                Ok(BitString { bits })
            }
        }
    }

    /// Render to text. Hex is only defined for lengths divisible by 4.
    pub fn render(&self, format: Format) -> Result<String, Error> {
        match format {
            Format::BinaryText => Ok(self
                .bits
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect()),
            Format::HexText => {
                if self.len() % 4 != 0 {
                    return Err(Error::Format(format!(
                        "hex rendering needs a length divisible by 4, got {}",
                        self.len()
                    )));
                }
                Ok(self
                    .bits
                    .chunks(4)
                    .map(|nib| {
                        let v = nib.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
                        char::from_digit(v, 16).unwrap()
                    })
                    .collect())
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::BinaryText).unwrap())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

// Serde round-trips through binary text so descriptor files stay
// diff-able; a "hex:" prefix selects the hex encoding on input.
impl TryFrom<String> for BitString {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        match s.strip_prefix("hex:") {
            Some(rest) => BitString::parse(rest, Format::HexText),
            None => BitString::parse(&s, Format::BinaryText),
        }
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.render(Format::BinaryText).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_basic() {
        let a = BitString::parse("01", Format::BinaryText).unwrap();
        let b = BitString::parse("11", Format::BinaryText).unwrap();
        assert_eq!(a.xor(&b).unwrap().to_string(), "10");
    }

    #[test]
    fn xor_identity_and_involution() {
        let mut rng = RandomSource::from_seed(7);
        let m = BitString::sample_uniform(64, &mut rng);
        let z = BitString::zeros(64);
        assert_eq!(m.xor(&z).unwrap(), m);
        let b = BitString::sample_uniform(64, &mut rng);
        assert_eq!(m.xor(&b).unwrap().xor(&b).unwrap(), m);
    }

    #[test]
    fn xor_length_mismatch() {
        let a = BitString::zeros(3);
        let b = BitString::zeros(4);
        assert!(matches!(a.xor(&b), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn concat_basic() {
        let a = BitString::parse("10", Format::BinaryText).unwrap();
        let b = BitString::parse("01", Format::BinaryText).unwrap();
        assert_eq!(a.concat(&b).to_string(), "1001");
        assert_eq!(BitString::empty().concat(&a), a);
        let one = BitString::parse("1", Format::BinaryText).unwrap();
        assert_eq!(one.concat(&BitString::zeros(3)).to_string(), "1000");
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(
            BitString::parse("1010", Format::BinaryText).unwrap().to_string(),
            "1010"
        );
        let f = BitString::parse("1111", Format::BinaryText).unwrap();
        assert_eq!(f.render(Format::HexText).unwrap(), "f");
        assert!(BitString::parse("10a", Format::BinaryText).is_err());
        assert!(BitString::parse("1", Format::BinaryText)
            .unwrap()
            .render(Format::HexText)
            .is_err());
    }

    #[test]
    fn sample_uniform_empty() {
        let mut rng = RandomSource::from_seed(1);
        assert_eq!(BitString::sample_uniform(0, &mut rng), BitString::empty());
    }

    #[test]
    fn sample_uniform_bit_frequencies() {
        // Per-position frequency of ones over 1e5 draws of length 8, 3-sigma
        // binomial band around 0.5 is well inside +/- 0.01.
        let mut rng = RandomSource::from_seed(42);
        let draws = 100_000usize;
        let mut ones = [0u32; 8];
        for _ in 0..draws {
            let w = BitString::sample_uniform(8, &mut rng);
            for (i, c) in ones.iter_mut().enumerate() {
                *c += w.bit(i) as u32;
            }
        }
        for c in ones {
            let freq = c as f64 / draws as f64;
            assert!((freq - 0.5).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn sample_uniform_chi_square_length4() {
        // All 16 length-4 outcomes over 1e5 draws; statistic below the 99.9%
        // quantile of chi2 with 15 degrees of freedom (37.70).
        let mut rng = RandomSource::from_seed(9);
        let draws = 100_000usize;
        let mut counts = [0u32; 16];
        for _ in 0..draws {
            let w = BitString::sample_uniform(4, &mut rng);
            counts[w.to_value() as usize] += 1;
        }
        let expected = draws as f64 / 16.0;
        let stat: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(stat < 37.70, "chi-square statistic {stat}");
    }

    #[test]
    fn value_round_trip() {
        let w = BitString::from_value(0b1011, 4);
        assert_eq!(w.to_string(), "1011");
        assert_eq!(w.to_value(), 0b1011);
    }
}
