//! Stegosystems: the (insert, extract, inv) contract with symmetry and
//! f-boundedness, the XOR-prefix scheme, an insecure LSB baseline, and a
//! 0-padding adapter that shrinks the message bound.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::Error;
use crate::prng::Generator;
use crate::probsets::PrefixUniformFamily;
use crate::rng::RandomSource;

/// Message length as a function of the support length, for the padding
/// adapter: f1(ℓ) = a·ℓ + b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageLengthFn {
    pub a: i64,
    pub b: i64,
}

impl MessageLengthFn {
    pub fn apply(&self, support_len: u64) -> Result<u64, Error> {
        let v = self.a * support_len as i64 + self.b;
        if v < 0 {
            return Err(Error::InvalidParameter(format!(
                "message length rule gives {v} at support length {support_len}"
            )));
        }
        Ok(v as u64)
    }
}

/// A stegosystem. All shipped schemes are symmetric (inv is the identity).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Scheme {
    /// insert(s, m, k) = sₙ · (m ⊕ G(k)); extract(sₙ·w, k) = w ⊕ G(k).
    XorPrefix {
        family: PrefixUniformFamily,
        generator: Generator,
        /// When true, extract and insert verify the sₙ prefix.
        #[serde(default)]
        strict: bool,
    },
    /// Overwrites the last bit of each `block`-bit block with the next
    /// message bit; the key is unused.
    Lsb { block: u64 },
    /// 0-pads messages up to the base scheme's bound; extraction truncates.
    Padded {
        base: Box<Scheme>,
        f1: MessageLengthFn,
    },
    /// insert returns the support unchanged; carries no message.
    Identity,
}

pub fn make_lsb_scheme(block: u64) -> Result<Scheme, Error> {
    if block < 2 {
        return Err(Error::InvalidParameter("LSB block must be >= 2".into()));
    }
    Ok(Scheme::Lsb { block })
}

/// Build the reduced-bound scheme of the padding construction, checking
/// f1 against the base bound at each of `check_lengths`.
pub fn pad_adapter(
    base: Scheme,
    f1: MessageLengthFn,
    check_lengths: &[u64],
) -> Result<Scheme, Error> {
    for &len in check_lengths {
        let base_bound = base.message_length(len)?;
        let reduced = f1.apply(len)?;
        if reduced > base_bound {
            return Err(Error::BoundViolation(format!(
                "f1({len}) = {reduced} exceeds the base bound {base_bound}"
            )));
        }
    }
    Ok(Scheme::Padded {
        base: Box::new(base),
        f1,
    })
}

impl Scheme {
    pub fn name(&self) -> String {
        match self {
            Scheme::XorPrefix { generator, .. } => format!("xor-prefix({})", generator.name()),
            Scheme::Lsb { block } => format!("lsb({block})"),
            Scheme::Padded { base, .. } => format!("padded({})", base.name()),
            Scheme::Identity => "identity".into(),
        }
    }

    pub fn symmetric(&self) -> bool {
        // Asymmetric stegosystems are out of scope; everything shipped
        // uses inv = identity.
        true
    }

    /// True when the stego-content depends on the support only through
    /// its length. Lets exact oracles collapse the support loop.
    pub fn support_oblivious(&self) -> bool {
        match self {
            Scheme::XorPrefix { strict, .. } => !strict,
            Scheme::Lsb { .. } | Scheme::Identity => false,
            Scheme::Padded { base, .. } => base.support_oblivious(),
        }
    }

    /// The f-bound: admissible message length for a given support length.
    pub fn message_length(&self, support_len: u64) -> Result<u64, Error> {
        match self {
            Scheme::XorPrefix { family, .. } => {
                let n = family.length_rule.invert(support_len)?;
                if !(family.domain.0..=family.domain.1).contains(&n) {
                    return Err(Error::Support(format!(
                        "support length {support_len} maps to n={n} outside the family domain"
                    )));
                }
                if support_len <= family.alpha {
                    return Err(Error::Support(format!(
                        "support length {support_len} leaves no message room"
                    )));
                }
                Ok(support_len - family.alpha)
            }
            Scheme::Lsb { block } => {
                if support_len < *block {
                    return Err(Error::Support(format!(
                        "support length {support_len} shorter than one block of {block}"
                    )));
                }
                Ok(support_len / block)
            }
            Scheme::Padded { base, f1 } => {
                let base_bound = base.message_length(support_len)?;
                let reduced = f1.apply(support_len)?;
                if reduced > base_bound {
                    return Err(Error::BoundViolation(format!(
                        "f1({support_len}) = {reduced} exceeds the base bound {base_bound}"
                    )));
                }
                Ok(reduced)
            }
            Scheme::Identity => Ok(0),
        }
    }

    pub fn check_key(&self, key: &BitString) -> Result<(), Error> {
        match self {
            Scheme::XorPrefix { generator, .. } => generator
                .check_seed(key)
                .map_err(|e| Error::Key(e.to_string())),
            Scheme::Padded { base, .. } => base.check_key(key),
            Scheme::Lsb { .. } | Scheme::Identity => Ok(()),
        }
    }

    /// 𝓘(s, m, k) = s′.
    pub fn insert(&self, s: &BitString, m: &BitString, k: &BitString) -> Result<BitString, Error> {
        let want = self.message_length(s.len() as u64)? as usize;
        if m.len() != want {
            return Err(Error::MessageLengthMismatch {
                got: m.len(),
                want,
            });
        }
        self.check_key(k)?;
        match self {
            Scheme::XorPrefix {
                family,
                generator,
                strict,
            } => {
                if *strict && !s.has_prefix(&family.prefix) {
                    return Err(Error::Support("support prefix mismatch".into()));
                }
                let keystream = generator.generate(k, m.len())?;
                Ok(family.prefix.concat(&m.xor(&keystream)?))
            }
            Scheme::Lsb { block } => {
                let mut bits = s.as_slice().to_vec();
                for (j, &mb) in m.as_slice().iter().enumerate() {
                    bits[(j + 1) * *block as usize - 1] = mb;
                }
                Ok(BitString::from_bits(&bits).unwrap())
            }
            Scheme::Padded { base, .. } => {
                let pad = base.message_length(s.len() as u64)? as usize - m.len();
                base.insert(s, &m.concat(&BitString::zeros(pad)), k)
            }
            Scheme::Identity => Ok(s.clone()),
        }
    }

    /// 𝓔(s′, k′) = m′.
    pub fn extract(&self, stego: &BitString, k_prime: &BitString) -> Result<BitString, Error> {
        let msg_len = self.message_length(stego.len() as u64)? as usize;
        self.check_key(k_prime)?;
        match self {
            Scheme::XorPrefix {
                family,
                generator,
                strict,
            } => {
                if *strict && !stego.has_prefix(&family.prefix) {
                    return Err(Error::Support("stego-content prefix mismatch".into()));
                }
                let w = stego.slice(family.alpha as usize, stego.len());
                let keystream = generator.generate(k_prime, w.len())?;
                w.xor(&keystream)
            }
            Scheme::Lsb { block } => {
                let bits: Vec<u8> = (0..msg_len)
                    .map(|j| stego.bit((j + 1) * *block as usize - 1))
                    .collect();
                Ok(BitString::from_bits(&bits).unwrap())
            }
            Scheme::Padded { base, .. } => {
                let full = base.extract(stego, k_prime)?;
                Ok(full.slice(0, msg_len))
            }
            Scheme::Identity => Ok(BitString::empty()),
        }
    }

    /// inv: embedding key → extraction key.
    pub fn inv_key(&self, k: &BitString) -> Result<BitString, Error> {
        self.check_key(k)?;
        Ok(k.clone())
    }
}

/// Probe f-boundedness: for each length, the scheme's bound must not
/// exceed f, and insert must reject messages of any other length.
pub fn check_f_bounded(
    scheme: &Scheme,
    f: impl Fn(u64) -> u64,
    lengths: &[u64],
    rng: &mut RandomSource,
) -> bool {
    for &len in lengths {
        let Ok(bound) = scheme.message_length(len) else {
            return false;
        };
        if bound > f(len) {
            return false;
        }
        let support = BitString::sample_uniform(len as usize, rng);
        let key = BitString::sample_uniform(16, rng);
        let good = BitString::sample_uniform(bound as usize, rng);
        if scheme.insert(&support, &good, &key).is_err() {
            return false;
        }
        for wrong in [bound + 1, bound.saturating_sub(1), bound + 7] {
            if wrong == bound {
                continue;
            }
            let m = BitString::sample_uniform(wrong as usize, rng);
            if scheme.insert(&support, &m, &key).is_ok() {
                return false;
            }
        }
    }
    true
}
