//! The security games: Monte Carlo and exact distinguisher advantage for
//! the hiding game, the secure-hiding verdict, the exact stego-security
//! distance, and the PRNG game.
//!
//! Determinism contract: the master seed is split into one sub-seed per
//! (arm, trial index), and counts are aggregated commutatively, so results
//! are identical regardless of execution order or parallelism.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::bits::BitString;
use crate::detectors::Distinguisher;
use crate::error::Error;
use crate::prng::Generator;
use crate::probsets::{rational_to_f64, Family, Polynomial};
use crate::rng::RandomSource;
use crate::schemes::Scheme;

const STREAM_COVER: u64 = 0;
const STREAM_STEGO: u64 = 1;

/// Largest enumerable message or key space: 2^20 points.
const MAX_ENUM_BITS: u64 = 20;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum MessageMode {
    Fixed { bits: BitString },
    Uniform,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum KeyMode {
    Fixed { bits: BitString },
    Uniform { seed_length: u64 },
}

impl KeyMode {
    /// Key length in bits, the |k| of the threshold term.
    pub fn key_len(&self) -> u64 {
        match self {
            KeyMode::Fixed { bits } => bits.len() as u64,
            KeyMode::Uniform { seed_length } => *seed_length,
        }
    }
}

/// One configured instance of the hiding game at index n.
#[derive(Debug, Clone)]
pub struct GameConfig<'a> {
    pub family: &'a Family,
    pub scheme: &'a Scheme,
    pub n: u64,
    pub message_mode: MessageMode,
    pub key_mode: KeyMode,
    pub trials: u64,
    pub delta: f64,
}

impl GameConfig<'_> {
    fn validate(&self) -> Result<(), Error> {
        if self.trials < 100 {
            return Err(Error::Config("trials must be >= 100".into()));
        }
        if !(0.0..1.0).contains(&self.delta) || self.delta <= 0.0 {
            return Err(Error::Config("delta must be in (0,1)".into()));
        }
        let support_len = self.family.support_length(self.n)?;
        let msg_len = self.scheme.message_length(support_len)?;
        if let MessageMode::Fixed { bits } = &self.message_mode {
            if bits.len() as u64 != msg_len {
                return Err(Error::Config(format!(
                    "fixed message length {} does not match the scheme bound {msg_len}",
                    bits.len()
                )));
            }
        }
        if let KeyMode::Fixed { bits } = &self.key_mode {
            self.scheme.check_key(bits)?;
        }
        // Dry-run one stego round so the trial loop cannot fail mid-flight.
        let mut probe = RandomSource::split(0, u64::MAX, 0);
        let s = self.family.sample(self.n, &mut probe)?;
        let m = self.draw_message(msg_len, &mut probe);
        let k = self.draw_key(&mut probe);
        self.scheme.insert(&s, &m, &k)?;
        Ok(())
    }

    fn draw_message(&self, msg_len: u64, rng: &mut RandomSource) -> BitString {
        match &self.message_mode {
            MessageMode::Fixed { bits } => bits.clone(),
            MessageMode::Uniform => BitString::sample_uniform(msg_len as usize, rng),
        }
    }

    fn draw_key(&self, rng: &mut RandomSource) -> BitString {
        match &self.key_mode {
            KeyMode::Fixed { bits } => bits.clone(),
            KeyMode::Uniform { seed_length } => {
                BitString::sample_uniform(*seed_length as usize, rng)
            }
        }
    }
}

/// Point estimate (or exact value) of a distinguisher's advantage.
#[derive(Debug, Clone)]
pub struct AdvantageReport {
    pub p_stego: f64,
    pub p_cover: f64,
    pub advantage: f64,
    /// Hoeffding bound on the combined two-arm estimate at confidence
    /// 1 − delta; zero for exact reports.
    pub half_width: f64,
    pub trials: u64,
    pub exact: bool,
    pub p_stego_exact: Option<BigRational>,
    pub p_cover_exact: Option<BigRational>,
    pub advantage_exact: Option<BigRational>,
}

impl AdvantageReport {
    fn from_exact(p_stego: BigRational, p_cover: BigRational) -> Self {
        let advantage = (p_stego.clone() - p_cover.clone()).abs();
        AdvantageReport {
            p_stego: rational_to_f64(&p_stego),
            p_cover: rational_to_f64(&p_cover),
            advantage: rational_to_f64(&advantage),
            half_width: 0.0,
            trials: 0,
            exact: true,
            p_stego_exact: Some(p_stego),
            p_cover_exact: Some(p_cover),
            advantage_exact: Some(advantage),
        }
    }
}

/// Two estimates, union bound, two-sided: sqrt(ln(4/δ) / (2N)).
pub fn hoeffding_half_width(delta: f64, trials: u64) -> f64 {
    ((4.0 / delta).ln() / (2.0 * trials as f64)).sqrt()
}

/// The 1/𝔭(i) + 1/𝔭(|k|) threshold of the secure-hiding inequality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdPolicy {
    pub polynomial: Polynomial,
}

impl ThresholdPolicy {
    pub fn new(polynomial: Polynomial) -> Result<Self, Error> {
        if !polynomial.is_positive() {
            return Err(Error::InvalidParameter(
                "threshold polynomial must be positive with positive leading coefficient".into(),
            ));
        }
        Ok(ThresholdPolicy { polynomial })
    }

    pub fn threshold(&self, index: u64, key_len: u64) -> f64 {
        1.0 / self.polynomial.eval(index as f64) + 1.0 / self.polynomial.eval(key_len as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// PASS if advantage + half_width < t, FAIL if advantage − half_width > t,
/// else INCONCLUSIVE.
pub fn secure_hiding_verdict(
    report: &AdvantageReport,
    policy: &ThresholdPolicy,
    index: u64,
    key_len: u64,
) -> Verdict {
    let t = policy.threshold(index, key_len);
    if report.advantage + report.half_width < t {
        Verdict::Pass
    } else if report.advantage - report.half_width > t {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    }
}

/// Monte Carlo estimate of |Pr[D(𝓘(Sₙ,m,k))=1] − Pr[D(Sₙ)=1]|.
pub fn estimate_advantage(
    cfg: &GameConfig<'_>,
    d: &Distinguisher,
    master_seed: u64,
) -> Result<AdvantageReport, Error> {
    cfg.validate()?;
    let support_len = cfg.family.support_length(cfg.n)?;
    let msg_len = cfg.scheme.message_length(support_len)?;

    let (cover_hits, stego_hits) = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RandomSource::split(master_seed, STREAM_COVER, t);
            let s = cfg.family.sample(cfg.n, &mut rng).expect("validated index");
            let cover = d.decide(&s, &mut rng) as u64;

            let mut rng = RandomSource::split(master_seed, STREAM_STEGO, t);
            let s = cfg.family.sample(cfg.n, &mut rng).expect("validated index");
            let m = cfg.draw_message(msg_len, &mut rng);
            let k = cfg.draw_key(&mut rng);
            let stego_word = cfg.scheme.insert(&s, &m, &k).expect("validated config");
            let stego = d.decide(&stego_word, &mut rng) as u64;
            (cover, stego)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let p_cover = cover_hits as f64 / cfg.trials as f64;
    let p_stego = stego_hits as f64 / cfg.trials as f64;
    Ok(AdvantageReport {
        p_stego,
        p_cover,
        advantage: (p_stego - p_cover).abs(),
        half_width: hoeffding_half_width(cfg.delta, cfg.trials),
        trials: cfg.trials,
        exact: false,
        p_stego_exact: None,
        p_cover_exact: None,
        advantage_exact: None,
    })
}

fn enumerate_mode(
    mode_len: u64,
    fixed: Option<&BitString>,
    what: &str,
) -> Result<Vec<(BitString, BigRational)>, Error> {
    match fixed {
        Some(b) => Ok(vec![(b.clone(), BigRational::one())]),
        None => {
            if mode_len > MAX_ENUM_BITS {
                return Err(Error::TooLarge(format!(
                    "{what} space of 2^{mode_len} points exceeds 2^{MAX_ENUM_BITS}"
                )));
            }
            let count = 1u64 << mode_len;
            let p = BigRational::new(BigInt::one(), BigInt::from(count));
            Ok((0..count)
                .map(|v| (BitString::from_value(v, mode_len as usize), p.clone()))
                .collect())
        }
    }
}

/// Exact advantage by full enumeration, as rationals. The distinguisher
/// must be deterministic; its coin source is never consulted.
pub fn exact_advantage(
    cfg: &GameConfig<'_>,
    d: &Distinguisher,
) -> Result<AdvantageReport, Error> {
    if !d.deterministic {
        return Err(Error::NondeterministicDistinguisher(d.name.clone()));
    }
    let support_len = cfg.family.support_length(cfg.n)?;
    let msg_len = cfg.scheme.message_length(support_len)?;
    if let MessageMode::Fixed { bits } = &cfg.message_mode {
        if bits.len() as u64 != msg_len {
            return Err(Error::Config(format!(
                "fixed message length {} does not match the scheme bound {msg_len}",
                bits.len()
            )));
        }
    }

    let supports = cfg.family.enumerate(cfg.n)?;
    let messages = match &cfg.message_mode {
        MessageMode::Fixed { bits } => enumerate_mode(0, Some(bits), "message")?,
        MessageMode::Uniform => enumerate_mode(msg_len, None, "message")?,
    };
    let keys = match &cfg.key_mode {
        KeyMode::Fixed { bits } => enumerate_mode(0, Some(bits), "key")?,
        KeyMode::Uniform { seed_length } => enumerate_mode(*seed_length, None, "key")?,
    };

    let mut coin = RandomSource::from_seed(0);
    let mut p_cover = BigRational::zero();
    for (s, p) in &supports {
        if d.decide(s, &mut coin) == 1 {
            p_cover += p;
        }
    }

    let mut p_stego = BigRational::zero();
    if cfg.scheme.support_oblivious() {
        // Output depends on the support only through its length, so one
        // representative support covers the whole sum over S_n.
        let rep = &supports[0].0;
        for (m, pm) in &messages {
            for (k, pk) in &keys {
                let stego = cfg.scheme.insert(rep, m, k)?;
                if d.decide(&stego, &mut coin) == 1 {
                    p_stego += pm * pk;
                }
            }
        }
    } else {
        for (s, ps) in &supports {
            for (m, pm) in &messages {
                for (k, pk) in &keys {
                    let stego = cfg.scheme.insert(s, m, k)?;
                    if d.decide(&stego, &mut coin) == 1 {
                        p_stego += ps * pm * pk;
                    }
                }
            }
        }
    }
    Ok(AdvantageReport::from_exact(p_stego, p_cover))
}

/// Exact total-variation distance between the stego-content distribution
/// p(Y|K₁) and the cover distribution p(X) at index n: zero iff the
/// embedding is stego-secure for this key and message distribution.
pub fn stego_security_distance(
    family: &Family,
    scheme: &Scheme,
    key: &BitString,
    message_dist: &MessageMode,
    n: u64,
) -> Result<BigRational, Error> {
    let supports = family.enumerate(n)?;
    let support_len = family.support_length(n)?;
    let msg_len = scheme.message_length(support_len)?;
    let messages = match message_dist {
        MessageMode::Fixed { bits } => {
            if bits.len() as u64 != msg_len {
                return Err(Error::Config(format!(
                    "fixed message length {} does not match the scheme bound {msg_len}",
                    bits.len()
                )));
            }
            enumerate_mode(0, Some(bits), "message")?
        }
        MessageMode::Uniform => enumerate_mode(msg_len, None, "message")?,
    };

    let mut stego_dist: HashMap<BitString, BigRational> = HashMap::new();
    if scheme.support_oblivious() {
        let rep = &supports[0].0;
        for (m, pm) in &messages {
            let y = scheme.insert(rep, m, key)?;
            *stego_dist.entry(y).or_insert_with(BigRational::zero) += pm;
        }
    } else {
        for (s, ps) in &supports {
            for (m, pm) in &messages {
                let y = scheme.insert(s, m, key)?;
                *stego_dist.entry(y).or_insert_with(BigRational::zero) += ps * pm;
            }
        }
    }

    let mut cover_dist: HashMap<BitString, BigRational> = HashMap::new();
    for (s, ps) in &supports {
        *cover_dist.entry(s.clone()).or_insert_with(BigRational::zero) += ps;
    }

    let mut tv = BigRational::zero();
    let all: std::collections::HashSet<&BitString> =
        stego_dist.keys().chain(cover_dist.keys()).collect();
    for y in all {
        let py = stego_dist.get(y).cloned().unwrap_or_else(BigRational::zero);
        let px = cover_dist.get(y).cloned().unwrap_or_else(BigRational::zero);
        tv += (py - px).abs();
    }
    Ok(tv / BigRational::from(BigInt::from(2)))
}

/// The PRNG game: D(G(U_seed)) against D(U_out).
pub fn prng_advantage(
    g: &Generator,
    d: &Distinguisher,
    seed_len: u64,
    out_len: u64,
    trials: u64,
    delta: f64,
    master_seed: u64,
) -> Result<AdvantageReport, Error> {
    if out_len <= seed_len {
        return Err(Error::Config(format!(
            "out_len {out_len} must exceed seed_len {seed_len} (expansion)"
        )));
    }
    if trials < 100 {
        return Err(Error::Config("trials must be >= 100".into()));
    }
    if !(0.0..1.0).contains(&delta) || delta <= 0.0 {
        return Err(Error::Config("delta must be in (0,1)".into()));
    }

    let (gen_hits, uniform_hits) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RandomSource::split(master_seed, STREAM_STEGO, t);
            let seed = BitString::sample_uniform(seed_len as usize, &mut rng);
            let output = g.generate(&seed, out_len as usize).expect("valid lengths");
            let a = d.decide(&output, &mut rng) as u64;

            let mut rng = RandomSource::split(master_seed, STREAM_COVER, t);
            let w = BitString::sample_uniform(out_len as usize, &mut rng);
            let b = d.decide(&w, &mut rng) as u64;
            (a, b)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));

    let p_stego = gen_hits as f64 / trials as f64;
    let p_cover = uniform_hits as f64 / trials as f64;
    Ok(AdvantageReport {
        p_stego,
        p_cover,
        advantage: (p_stego - p_cover).abs(),
        half_width: hoeffding_half_width(delta, trials),
        trials,
        exact: false,
        p_stego_exact: None,
        p_cover_exact: None,
        advantage_exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Format;
    use crate::detectors::{make_constant, make_suffix_match};
    use crate::prng::{make_arx_stream_generator, make_zero_generator};
    use crate::probsets::{make_prefix_uniform, LengthRule};
    use crate::schemes::Scheme;

    fn bs(s: &str) -> BitString {
        BitString::parse(s, Format::BinaryText).unwrap()
    }

    fn small_setup() -> (Family, Scheme) {
        let family = make_prefix_uniform(2, bs("10"), LengthRule::Identity, (3, 24)).unwrap();
        let scheme = match &family {
            Family::PrefixUniform(f) => Scheme::XorPrefix {
                family: f.clone(),
                generator: make_zero_generator(),
                strict: false,
            },
            _ => unreachable!(),
        };
        (family, scheme)
    }

    #[test]
    fn half_width_formula() {
        let hw = hoeffding_half_width(0.01, 20_000);
        assert!((hw - 0.012239).abs() < 1e-5, "{hw}");
    }

    #[test]
    fn monotone_in_trials() {
        let mut prev = hoeffding_half_width(0.01, 100);
        for trials in [200, 400, 1000, 10_000] {
            let hw = hoeffding_half_width(0.01, trials);
            assert!(hw < prev);
            prev = hw;
        }
    }

    #[test]
    fn constant_distinguisher_zero_advantage() {
        let (family, scheme) = small_setup();
        let cfg = GameConfig {
            family: &family,
            scheme: &scheme,
            n: 4,
            message_mode: MessageMode::Uniform,
            key_mode: KeyMode::Fixed { bits: bs("1") },
            trials: 1000,
            delta: 0.01,
        };
        let report = estimate_advantage(&cfg, &make_constant(1), 7).unwrap();
        assert_eq!(report.advantage, 0.0);
        let exact = exact_advantage(&cfg, &make_constant(0)).unwrap();
        assert!(exact.advantage_exact.as_ref().unwrap().is_zero());
        assert!(exact.exact);
        assert_eq!(exact.half_width, 0.0);
    }

    #[test]
    fn suffix_match_exact_three_quarters() {
        // Fixed key, fixed message, zero keystream: stego suffix is always
        // m, while a uniform cover suffix matches with probability 1/4.
        let (family, scheme) = small_setup();
        let cfg = GameConfig {
            family: &family,
            scheme: &scheme,
            n: 4,
            message_mode: MessageMode::Fixed { bits: bs("01") },
            key_mode: KeyMode::Fixed { bits: bs("1") },
            trials: 20_000,
            delta: 0.01,
        };
        let d = make_suffix_match(bs("01"), 2);
        let exact = exact_advantage(&cfg, &d).unwrap();
        let expected = BigRational::new(BigInt::from(3), BigInt::from(4));
        assert_eq!(exact.advantage_exact.unwrap(), expected);
        assert_eq!(exact.p_stego, 1.0);
        assert_eq!(exact.p_cover, 0.25);

        let mc = estimate_advantage(&cfg, &d, 99).unwrap();
        assert!((mc.advantage - 0.75).abs() <= mc.half_width, "{}", mc.advantage);
    }

    #[test]
    fn verdicts() {
        let policy = ThresholdPolicy::new(Polynomial(vec![0.0, 1.0])).unwrap();
        assert!((policy.threshold(4, 8) - 0.375).abs() < 1e-12);
        let exact_zero = AdvantageReport::from_exact(BigRational::zero(), BigRational::zero());
        assert_eq!(secure_hiding_verdict(&exact_zero, &policy, 4, 8), Verdict::Pass);
        let exact_big = AdvantageReport::from_exact(
            BigRational::new(BigInt::from(3), BigInt::from(4)),
            BigRational::zero(),
        );
        assert_eq!(secure_hiding_verdict(&exact_big, &policy, 4, 8), Verdict::Fail);
        let straddling = AdvantageReport {
            p_stego: 0.3,
            p_cover: 0.0,
            advantage: 0.30,
            half_width: 0.05,
            trials: 100,
            exact: false,
            p_stego_exact: None,
            p_cover_exact: None,
            advantage_exact: None,
        };
        // threshold 1/4 + 1/20 = 0.3 sits inside [0.25, 0.35]
        let p20 = ThresholdPolicy::new(Polynomial(vec![0.0, 1.0])).unwrap();
        assert_eq!(secure_hiding_verdict(&straddling, &p20, 4, 20), Verdict::Inconclusive);
    }

    #[test]
    fn uniform_messages_make_exact_advantage_zero() {
        // m ↦ m ⊕ G(k) is a bijection, so both arms see the same
        // distribution; every deterministic distinguisher has advantage 0.
        let family = make_prefix_uniform(2, bs("10"), LengthRule::Identity, (3, 24)).unwrap();
        let scheme = match &family {
            Family::PrefixUniform(f) => Scheme::XorPrefix {
                family: f.clone(),
                generator: make_arx_stream_generator(),
                strict: false,
            },
            _ => unreachable!(),
        };
        let cfg = GameConfig {
            family: &family,
            scheme: &scheme,
            n: 10,
            message_mode: MessageMode::Uniform,
            key_mode: KeyMode::Fixed { bits: bs("10110100") },
            trials: 1000,
            delta: 0.01,
        };
        for d in crate::detectors::builtin_suite(10, 2, Some(&family), 10) {
            let r = exact_advantage(&cfg, &d).unwrap();
            assert!(r.advantage_exact.as_ref().unwrap().is_zero(), "{}", d.name);
        }
    }

    #[test]
    fn distance_zero_for_uniform_messages() {
        let family = make_prefix_uniform(2, bs("10"), LengthRule::Identity, (3, 24)).unwrap();
        let scheme = match &family {
            Family::PrefixUniform(f) => Scheme::XorPrefix {
                family: f.clone(),
                generator: make_arx_stream_generator(),
                strict: false,
            },
            _ => unreachable!(),
        };
        let key = bs("110010");
        let d = stego_security_distance(&family, &scheme, &key, &MessageMode::Uniform, 10).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn distance_point_mass_fixed_message() {
        let (family, scheme) = small_setup();
        let d = stego_security_distance(
            &family,
            &scheme,
            &bs("1"),
            &MessageMode::Fixed { bits: bs("01") },
            4,
        )
        .unwrap();
        assert_eq!(d, BigRational::new(BigInt::from(3), BigInt::from(4)));
    }

    #[test]
    fn distance_zero_for_identity_scheme() {
        let family = Family::Parity {
            length_rule: LengthRule::Identity,
            domain: (2, 16),
        };
        let d = stego_security_distance(
            &family,
            &Scheme::Identity,
            &BitString::empty(),
            &MessageMode::Fixed { bits: BitString::empty() },
            8,
        )
        .unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn prng_game_zero_generator() {
        // D = "all bits zero": exact advantage 1 - 2^-16.
        let d = Distinguisher::new("all-zero", true, |w: &BitString, _: &mut RandomSource| {
            u8::from(w.as_slice().iter().all(|&b| b == 0))
        });
        let r = prng_advantage(&make_zero_generator(), &d, 8, 16, 20_000, 0.01, 5).unwrap();
        let exact = 1.0 - 2f64.powi(-16);
        assert!((r.advantage - exact).abs() <= r.half_width, "{}", r.advantage);
        assert_eq!(r.p_stego, 1.0);
    }

    #[test]
    fn prng_game_guards() {
        let d = make_constant(0);
        assert!(prng_advantage(&make_zero_generator(), &d, 16, 16, 1000, 0.01, 0).is_err());
        assert!(prng_advantage(&make_zero_generator(), &d, 8, 16, 10, 0.01, 0).is_err());
    }

    #[test]
    fn arm_symmetry_and_determinism() {
        let (family, scheme) = small_setup();
        let cfg = GameConfig {
            family: &family,
            scheme: &scheme,
            n: 6,
            message_mode: MessageMode::Uniform,
            key_mode: KeyMode::Uniform { seed_length: 8 },
            trials: 2000,
            delta: 0.05,
        };
        let d = make_suffix_match(bs("0110"), 2);
        let a = estimate_advantage(&cfg, &d, 123).unwrap();
        let b = estimate_advantage(&cfg, &d, 123).unwrap();
        assert_eq!(a.p_stego, b.p_stego);
        assert_eq!(a.p_cover, b.p_cover);
        assert!(a.advantage >= 0.0);
    }

    #[test]
    fn nondeterministic_rejected_by_exact_oracle() {
        let (family, scheme) = small_setup();
        let cfg = GameConfig {
            family: &family,
            scheme: &scheme,
            n: 4,
            message_mode: MessageMode::Uniform,
            key_mode: KeyMode::Fixed { bits: bs("1") },
            trials: 1000,
            delta: 0.01,
        };
        let noisy = Distinguisher::new("coin", false, |_: &BitString, c: &mut RandomSource| {
            c.gen_range(0..2)
        });
        assert!(matches!(
            exact_advantage(&cfg, &noisy),
            Err(Error::NondeterministicDistinguisher(_))
        ));
    }
}
