//! Indexed families {(Sₙ, Pₙ)} of finite equal-length support sets with
//! distributions: sampling, exact enumeration, and validation.
//!
//! Enumeration carries probabilities as exact rationals so the distance
//! checks downstream are exact, not approximate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::Error;
use crate::rng::RandomSource;

/// Default enumeration budget: supports of at most 2^20 elements.
pub const DEFAULT_ENUM_LOG2: u32 = 20;

/// Support length as a function of the family index n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LengthRule {
    /// ℓ(Sₙ) = n.
    Identity,
    /// ℓ(Sₙ) = a·n + b.
    Affine { a: i64, b: i64 },
}

impl LengthRule {
    pub fn apply(&self, n: u64) -> Result<u64, Error> {
        let l = match self {
            LengthRule::Identity => n as i64,
            LengthRule::Affine { a, b } => a
                .checked_mul(n as i64)
                .and_then(|v| v.checked_add(*b))
                .ok_or_else(|| Error::InvalidParameter("length rule overflow".into()))?,
        };
        if l <= 0 {
            return Err(Error::InvalidParameter(format!(
                "length rule gives non-positive length {l} at n={n}"
            )));
        }
        Ok(l as u64)
    }

    /// Recover n from a support length, when the rule is invertible there.
    pub fn invert(&self, support_len: u64) -> Result<u64, Error> {
        match self {
            LengthRule::Identity => Ok(support_len),
            LengthRule::Affine { a, b } => {
                let num = support_len as i64 - b;
                if *a == 0 || num % a != 0 || num / a < 0 {
                    return Err(Error::Support(format!(
                        "support length {support_len} not produced by the length rule"
                    )));
                }
                Ok((num / a) as u64)
            }
        }
    }
}

/// A polynomial with the coefficient of x^i at position i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<f64>);

impl Polynomial {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Positive leading coefficient and p(x) > 0 sampled on [1, 4096].
    pub fn is_positive(&self) -> bool {
        match self.0.iter().rposition(|&c| c != 0.0) {
            Some(i) if self.0[i] > 0.0 => (1..=4096).all(|x| self.eval(x as f64) > 0.0),
            _ => false,
        }
    }
}

/// Prefix-uniform family: Sₙ = { sₙ·w | w ∈ {0,1}^(ℓ(Sₙ)−α) }, uniform Pₙ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefixUniformFamily {
    pub alpha: u64,
    #[serde(alias = "prefix_hex_or_binary")]
    pub prefix: BitString,
    pub length_rule: LengthRule,
    /// Inclusive index domain [n_min, n_max].
    pub domain: (u64, u64),
}

/// A probability set family. Supports exact enumeration up to the budget
/// and sampling at any domain index.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Family {
    PrefixUniform(PrefixUniformFamily),
    /// Supports of length ℓ(Sₙ) whose last bit equals the XOR of all
    /// preceding bits, uniform over the 2^(ℓ−1) such words.
    Parity {
        length_rule: LengthRule,
        domain: (u64, u64),
    },
    /// Explicitly listed supports per index, probabilities as exact
    /// rationals given as "num/den" strings.
    Explicit {
        sets: BTreeMap<u64, Vec<(BitString, String)>>,
    },
}

/// Flags raised by [`Family::validate`], each with the first offending n.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub equal_length_violation: Option<u64>,
    pub probability_sum_violation: Option<u64>,
    pub poly_bound_violation: Option<u64>,
    pub checked_up_to: u64,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.equal_length_violation.is_none()
            && self.probability_sum_violation.is_none()
            && self.poly_bound_violation.is_none()
    }
}

pub fn make_prefix_uniform(
    alpha: u64,
    prefix: BitString,
    length_rule: LengthRule,
    domain: (u64, u64),
) -> Result<Family, Error> {
    if alpha == 0 {
        return Err(Error::InvalidParameter("alpha must be >= 1".into()));
    }
    if prefix.len() as u64 != alpha {
        return Err(Error::InvalidParameter(format!(
            "prefix length {} does not equal alpha {alpha}",
            prefix.len()
        )));
    }
    for n in [domain.0, domain.1] {
        if length_rule.apply(n)? <= alpha {
            return Err(Error::InvalidParameter(format!(
                "support length {} at n={n} leaves no message room past alpha={alpha}",
                length_rule.apply(n)?
            )));
        }
    }
    Ok(Family::PrefixUniform(PrefixUniformFamily {
        alpha,
        prefix,
        length_rule,
        domain,
    }))
}

/// The default instance: α=16, ℓ(Sₙ)=n, sₙ = the first 16 fraction bits of π
/// (0x243f), n ∈ [24, 1024].
pub fn flagship_family() -> Family {
    make_prefix_uniform(
        16,
        BitString::parse("0010010000111111", crate::bits::Format::BinaryText).unwrap(),
        LengthRule::Identity,
        (24, 1024),
    )
    .unwrap()
}

impl Family {
    fn domain(&self) -> Option<(u64, u64)> {
        match self {
            Family::PrefixUniform(f) => Some(f.domain),
            Family::Parity { domain, .. } => Some(*domain),
            Family::Explicit { .. } => None,
        }
    }

    pub fn contains_index(&self, n: u64) -> bool {
        match self {
            Family::Explicit { sets } => sets.contains_key(&n),
            _ => {
                let (lo, hi) = self.domain().unwrap();
                (lo..=hi).contains(&n)
            }
        }
    }

    /// ℓ(Sₙ) in bits.
    pub fn support_length(&self, n: u64) -> Result<u64, Error> {
        if !self.contains_index(n) {
            return Err(Error::Domain(format!("index n={n} outside family domain")));
        }
        match self {
            Family::PrefixUniform(f) => f.length_rule.apply(n),
            Family::Parity { length_rule, .. } => length_rule.apply(n),
            Family::Explicit { sets } => {
                let set = &sets[&n];
                set.first()
                    .map(|(w, _)| w.len() as u64)
                    .ok_or_else(|| Error::Domain(format!("empty support set at n={n}")))
            }
        }
    }

    /// log2 of |Sₙ| for the structured families; exact count for explicit.
    fn support_count_log2(&self, n: u64) -> Result<f64, Error> {
        match self {
            Family::PrefixUniform(f) => {
                Ok((f.length_rule.apply(n)? - f.alpha) as f64)
            }
            Family::Parity { length_rule, .. } => Ok((length_rule.apply(n)? - 1) as f64),
            Family::Explicit { sets } => Ok((sets[&n].len() as f64).log2()),
        }
    }

    /// Draw one support word with distribution Pₙ.
    pub fn sample(&self, n: u64, rng: &mut RandomSource) -> Result<BitString, Error> {
        if !self.contains_index(n) {
            return Err(Error::Domain(format!("index n={n} outside family domain")));
        }
        match self {
            Family::PrefixUniform(f) => {
                let len = f.length_rule.apply(n)?;
                let suffix = BitString::sample_uniform((len - f.alpha) as usize, rng);
                Ok(f.prefix.concat(&suffix))
            }
            Family::Parity { length_rule, .. } => {
                let len = length_rule.apply(n)?;
                let head = BitString::sample_uniform(len as usize - 1, rng);
                let parity = head.as_slice().iter().fold(0u8, |a, &b| a ^ b);
                Ok(head.concat(&BitString::from_bits(&[parity]).unwrap()))
            }
            Family::Explicit { sets } => {
                // Inverse-CDF draw over the listed rationals.
                let set = &sets[&n];
                let probs: Vec<BigRational> = set
                    .iter()
                    .map(|(_, p)| parse_rational(p))
                    .collect::<Result<_, _>>()?;
                let u = rng.next_u64() as f64 / u64::MAX as f64;
                let mut acc = 0.0;
                for ((w, _), p) in set.iter().zip(&probs) {
                    acc += rational_to_f64(p);
                    if u < acc {
                        return Ok(w.clone());
                    }
                }
                Ok(set.last().unwrap().0.clone())
            }
        }
    }

    /// Exact enumeration of (word, probability) pairs at index n.
    pub fn enumerate(&self, n: u64) -> Result<Vec<(BitString, BigRational)>, Error> {
        self.enumerate_with_limit(n, DEFAULT_ENUM_LOG2)
    }

    pub fn enumerate_with_limit(
        &self,
        n: u64,
        max_log2: u32,
    ) -> Result<Vec<(BitString, BigRational)>, Error> {
        if !self.contains_index(n) {
            return Err(Error::Domain(format!("index n={n} outside family domain")));
        }
        if self.support_count_log2(n)? > max_log2 as f64 {
            return Err(Error::TooLarge(format!(
                "support set at n={n} exceeds 2^{max_log2} elements"
            )));
        }
        match self {
            Family::PrefixUniform(f) => {
                let len = f.length_rule.apply(n)?;
                let free = (len - f.alpha) as usize;
                let count = 1u64 << free;
                let p = BigRational::new(BigInt::one(), BigInt::from(count));
                Ok((0..count)
                    .map(|v| (f.prefix.concat(&BitString::from_value(v, free)), p.clone()))
                    .collect())
            }
            Family::Parity { length_rule, .. } => {
                let len = length_rule.apply(n)? as usize;
                let count = 1u64 << (len - 1);
                let p = BigRational::new(BigInt::one(), BigInt::from(count));
                Ok((0..count)
                    .map(|v| {
                        let head = BitString::from_value(v, len - 1);
                        let parity = head.as_slice().iter().fold(0u8, |a, &b| a ^ b);
                        (
                            head.concat(&BitString::from_bits(&[parity]).unwrap()),
                            p.clone(),
                        )
                    })
                    .collect())
            }
            Family::Explicit { sets } => sets[&n]
                .iter()
                .map(|(w, p)| Ok((w.clone(), parse_rational(p)?)))
                .collect(),
        }
    }

    /// Check equal lengths, exact probability sums, and the declared
    /// polynomial bound on ℓ(Sₙ), for enumerable n up to n_max.
    pub fn validate(&self, poly_bound: &Polynomial, n_max: u64) -> ValidationReport {
        let mut report = ValidationReport {
            checked_up_to: n_max,
            ..Default::default()
        };
        let indices: Vec<u64> = match self {
            Family::Explicit { sets } => sets.keys().copied().filter(|&n| n <= n_max).collect(),
            _ => {
                let (lo, hi) = self.domain().unwrap();
                (lo..=hi.min(n_max)).collect()
            }
        };
        for n in indices {
            let len = match self.support_length(n) {
                Ok(l) => l,
                Err(_) => continue,
            };
            if report.poly_bound_violation.is_none() && (len as f64) > poly_bound.eval(n as f64) {
                report.poly_bound_violation = Some(n);
            }
            // Exact checks need the enumeration.
            let Ok(set) = self.enumerate(n) else { continue };
            if report.equal_length_violation.is_none()
                && set.iter().any(|(w, _)| w.len() as u64 != len)
            {
                report.equal_length_violation = Some(n);
            }
            if report.probability_sum_violation.is_none() {
                let sum: BigRational = set.iter().map(|(_, p)| p.clone()).sum();
                let positive = set.iter().all(|(_, p)| p > &BigRational::zero());
                if !positive || sum != BigRational::one() {
                    report.probability_sum_violation = Some(n);
                }
            }
        }
        report
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
