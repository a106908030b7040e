//! Concrete polynomial-time distinguishers: trivial, statistical,
//! structural, and key-aware adversaries. All decide a hard 0/1 verdict
//! in one pass over the word.

use std::sync::Arc;

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::bits::BitString;
use crate::error::Error;
use crate::probsets::Family;
use crate::rng::RandomSource;

type DecideFn = dyn Fn(&BitString, &mut RandomSource) -> u8 + Send + Sync;

/// A randomized decision procedure BitString → {0,1}.
#[derive(Clone)]
pub struct Distinguisher {
    pub name: String,
    pub deterministic: bool,
    decide: Arc<DecideFn>,
}

impl std::fmt::Debug for Distinguisher {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Distinguisher({})", self.name)
    }
}

impl Distinguisher {
    pub fn new(
        name: impl Into<String>,
        deterministic: bool,
        decide: impl Fn(&BitString, &mut RandomSource) -> u8 + Send + Sync + 'static,
    ) -> Self {
        Distinguisher {
            name: name.into(),
            deterministic,
            decide: Arc::new(decide),
        }
    }

    pub fn decide(&self, word: &BitString, coin: &mut RandomSource) -> u8 {
        (self.decide)(word, coin)
    }
}

/// Always outputs the given bit.
pub fn make_constant(bit: u8) -> Distinguisher {
    Distinguisher::new(format!("constant({bit})"), true, move |_, _| bit & 1)
}

/// 1 iff the suffix after position `alpha` equals `target`. The key-aware
/// adversary: with target = m ⊕ G(k) it recognizes a fixed stego word.
pub fn make_suffix_match(target: BitString, alpha: u64) -> Distinguisher {
    let alpha = alpha as usize;
    Distinguisher::new(format!("suffix-match(alpha={alpha})"), true, move |w, _| {
        if w.len() < alpha + target.len() {
            return 0;
        }
        u8::from(w.slice(alpha, w.len()) == target)
    })
}

/// 1 iff the word's α-prefix equals the family's sₙ.
pub fn make_prefix_member(family: &Family, n: u64) -> Result<Distinguisher, Error> {
    let prefix = match family {
        Family::PrefixUniform(f) => f.prefix.clone(),
        _ => {
            return Err(Error::InvalidParameter(
                "prefix-member needs a prefix-uniform family".into(),
            ))
        }
    };
    family.support_length(n)?;
    Ok(Distinguisher::new("prefix-member", true, move |w, _| {
        u8::from(w.has_prefix(&prefix))
    }))
}

/// Chi-square frequency test over non-overlapping `block`-bit blocks.
/// Outputs 1 iff the statistic exceeds the chi-square quantile with
/// 2^block − 1 degrees of freedom.
pub fn make_chi_square(block: u32, quantile: f64) -> Result<Distinguisher, Error> {
    if !(1..=8).contains(&block) {
        return Err(Error::InvalidParameter("block must be in 1..=8".into()));
    }
    if !(0.0..1.0).contains(&quantile) || quantile <= 0.0 {
        return Err(Error::InvalidParameter("quantile must be in (0,1)".into()));
    }
    let bins = 1usize << block;
    let critical = chi_square_quantile(bins as f64 - 1.0, quantile);
    Ok(Distinguisher::new(
        format!("chi-square(block={block},q={quantile})"),
        true,
        move |w, _| {
            let nblocks = w.len() / block as usize;
            if nblocks == 0 {
                return 0;
            }
            let mut counts = vec![0u64; bins];
            for j in 0..nblocks {
                let mut v = 0usize;
                for i in 0..block as usize {
                    v = (v << 1) | w.bit(j * block as usize + i) as usize;
                }
                counts[v] += 1;
            }
            let expected = nblocks as f64 / bins as f64;
            let stat: f64 = counts
                .iter()
                .map(|&c| {
                    let d = c as f64 - expected;
                    d * d / expected
                })
                .sum();
            u8::from(stat > critical)
        },
    ))
}

/// Two-sided runs test. For iid uniform bits the number of runs minus one
/// is Binomial(L−1, 1/2); outputs 1 iff the count deviates beyond the
/// normal-approximation quantile.
pub fn make_runs_test(quantile: f64) -> Result<Distinguisher, Error> {
    if !(0.0..1.0).contains(&quantile) || quantile <= 0.0 {
        return Err(Error::InvalidParameter("quantile must be in (0,1)".into()));
    }
    let z = Normal::new(0.0, 1.0)
        .unwrap()
        .inverse_cdf(0.5 + quantile / 2.0);
    Ok(Distinguisher::new(
        format!("runs(q={quantile})"),
        true,
        move |w, _| {
            if w.len() < 2 {
                return 0;
            }
            let switches = (1..w.len()).filter(|&i| w.bit(i) != w.bit(i - 1)).count();
            let n = (w.len() - 1) as f64;
            let dev = (switches as f64 - n / 2.0).abs();
            u8::from(dev > z * (n / 4.0).sqrt())
        },
    ))
}

/// 1 iff the fraction of adjacent positions with differing bits is at
/// least `threshold`. Targets the alternating LCG-LSB keystream.
pub fn make_alternation(threshold: f64) -> Result<Distinguisher, Error> {
    if !(0.5..=1.0).contains(&threshold) || threshold <= 0.5 {
        return Err(Error::InvalidParameter(
            "threshold must be in (0.5, 1]".into(),
        ));
    }
    Ok(Distinguisher::new(
        format!("alternation({threshold})"),
        true,
        move |w, _| {
            if w.len() < 2 {
                return 0;
            }
            let switches = (1..w.len()).filter(|&i| w.bit(i) != w.bit(i - 1)).count();
            u8::from(switches as f64 / (w.len() - 1) as f64 >= threshold)
        },
    ))
}

/// 1 iff the last bit differs from the XOR of all preceding bits.
/// Targets LSB embedding on the parity-structured family.
pub fn make_parity_check() -> Distinguisher {
    Distinguisher::new("parity-check", true, |w, _| {
        if w.is_empty() {
            return 0;
        }
        let head = w.as_slice()[..w.len() - 1].iter().fold(0u8, |a, &b| a ^ b);
        u8::from(w.bit(w.len() - 1) != head)
    })
}

/// The built-in suite used by the blanket security checks: every shipped
/// detector applicable to raw words of one length.
pub fn builtin_suite(word_len: u64, alpha: u64, family: Option<&Family>, n: u64) -> Vec<Distinguisher> {
    let mut suite = vec![
        make_constant(0),
        make_constant(1),
        make_chi_square(1, 0.999).unwrap(),
        make_chi_square(2, 0.999).unwrap(),
        make_runs_test(0.999).unwrap(),
        make_alternation(0.9).unwrap(),
        make_parity_check(),
    ];
    if word_len > alpha {
        suite.push(make_suffix_match(
            BitString::zeros((word_len - alpha) as usize),
            alpha,
        ));
    }
    if let Some(family) = family {
        if let Ok(d) = make_prefix_member(family, n) {
            suite.push(d);
        }
    }
    suite
}

fn chi_square_quantile(df: f64, quantile: f64) -> f64 {
    ChiSquared::new(df).unwrap().inverse_cdf(quantile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Format;

    fn bs(s: &str) -> BitString {
        BitString::parse(s, Format::BinaryText).unwrap()
    }

    fn coin() -> RandomSource {
        RandomSource::from_seed(0)
    }

    #[test]
    fn quantiles_match_reference_values() {
        // chi2 0.999 quantiles: df=1 -> 10.828, df=15 -> 37.697
        assert!((chi_square_quantile(1.0, 0.999) - 10.828).abs() < 0.01);
        assert!((chi_square_quantile(15.0, 0.999) - 37.697).abs() < 0.01);
    }

    #[test]
    fn constant_detectors() {
        let mut c = coin();
        assert_eq!(make_constant(1).decide(&bs("0101"), &mut c), 1);
        assert_eq!(make_constant(0).decide(&bs("0101"), &mut c), 0);
    }

    #[test]
    fn suffix_match_detector() {
        let d = make_suffix_match(bs("10"), 2);
        let mut c = coin();
        assert_eq!(d.decide(&bs("1010"), &mut c), 1);
        assert_eq!(d.decide(&bs("1011"), &mut c), 0);
    }

    #[test]
    fn chi_square_all_zero_word() {
        // 64 zeros, block=1: statistic (64-32)^2/32 * 2 = 64 > 10.83.
        let d = make_chi_square(1, 0.999).unwrap();
        let mut c = coin();
        assert_eq!(d.decide(&BitString::zeros(64), &mut c), 1);
        // perfectly balanced word: statistic 0.
        let mut ones = BitString::empty();
        for _ in 0..32 {
            ones = ones.concat(&bs("1"));
        }
        assert_eq!(d.decide(&BitString::zeros(32).concat(&ones), &mut c), 0);
    }

    #[test]
    fn chi_square_false_positive_rate() {
        // Uniform words, block=2, 0.999 quantile: empirical rate at most
        // 5x the nominal 0.001.
        let d = make_chi_square(2, 0.999).unwrap();
        let mut rng = RandomSource::from_seed(31);
        let mut c = coin();
        let words = 10_000;
        let mut hits = 0u32;
        for _ in 0..words {
            let w = BitString::sample_uniform(256, &mut rng);
            hits += d.decide(&w, &mut c) as u32;
        }
        let rate = hits as f64 / words as f64;
        assert!(rate <= 0.005, "false positive rate {rate}");
    }

    #[test]
    fn alternation_detector() {
        let d = make_alternation(0.9).unwrap();
        let mut c = coin();
        let mut alt = BitString::empty();
        for i in 0..64 {
            alt = alt.concat(&BitString::from_value(i % 2, 1));
        }
        assert_eq!(d.decide(&alt, &mut c), 1);
        assert_eq!(d.decide(&BitString::zeros(64), &mut c), 0);
        assert!(make_alternation(0.5).is_err());
    }

    #[test]
    fn parity_detector_on_family() {
        use crate::probsets::LengthRule;
        let fam = Family::Parity {
            length_rule: LengthRule::Identity,
            domain: (2, 16),
        };
        let d = make_parity_check();
        let mut c = coin();
        for (w, _) in fam.enumerate(8).unwrap() {
            assert_eq!(d.decide(&w, &mut c), 0);
        }
        assert_eq!(d.decide(&bs("00000001"), &mut c), 1);
    }

    #[test]
    fn runs_test_flags_structure() {
        let d = make_runs_test(0.999).unwrap();
        let mut c = coin();
        assert_eq!(d.decide(&BitString::zeros(128), &mut c), 1);
        let mut rng = RandomSource::from_seed(2);
        let hits: u32 = (0..2000)
            .map(|_| d.decide(&BitString::sample_uniform(128, &mut rng), &mut c) as u32)
            .sum();
        assert!(hits < 30, "uniform-word hits {hits}");
    }

    #[test]
    fn deterministic_repeatability() {
        let mut rng = RandomSource::from_seed(44);
        let w = BitString::sample_uniform(100, &mut rng);
        for d in builtin_suite(100, 2, None, 0) {
            assert!(d.deterministic);
            let a = d.decide(&w, &mut coin());
            let b = d.decide(&w, &mut coin());
            assert_eq!(a, b, "{}", d.name);
        }
    }
}
