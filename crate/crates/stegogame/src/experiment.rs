//! Config-driven experiment runner: JSON manifests in, CSV/JSON result
//! rows out. Rows are byte-reproducible for a given manifest and master
//! seed.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitString;
use crate::detectors::{self, Distinguisher};
use crate::error::Error;
use crate::game::{
    estimate_advantage, exact_advantage, secure_hiding_verdict, AdvantageReport, GameConfig,
    KeyMode, MessageMode, ThresholdPolicy,
};
use crate::prng::Generator;
use crate::probsets::{Family, Polynomial, PrefixUniformFamily};
use crate::rng::derive_seed;
use crate::schemes::{pad_adapter, MessageLengthFn, Scheme};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Scheme descriptor. An xor-prefix entry may omit its family and inherit
/// the manifest's.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SchemeSpec {
    XorPrefix {
        generator: Generator,
        #[serde(default)]
        strict: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        family: Option<PrefixUniformFamily>,
    },
    Lsb {
        block: u64,
    },
    Padded {
        base: Box<SchemeSpec>,
        f1: MessageLengthFn,
        #[serde(default)]
        check_lengths: Vec<u64>,
    },
    Identity,
}

impl SchemeSpec {
    pub fn resolve(&self, manifest_family: Option<&Family>) -> Result<Scheme, Error> {
        match self {
            SchemeSpec::XorPrefix {
                generator,
                strict,
                family,
            } => {
                let fam = match (family, manifest_family) {
                    (Some(f), _) => f.clone(),
                    (None, Some(Family::PrefixUniform(f))) => f.clone(),
                    _ => {
                        return Err(Error::Config(
                            "xor-prefix scheme needs a prefix-uniform family".into(),
                        ))
                    }
                };
                Ok(Scheme::XorPrefix {
                    family: fam,
                    generator: generator.clone(),
                    strict: *strict,
                })
            }
            SchemeSpec::Lsb { block } => crate::schemes::make_lsb_scheme(*block),
            SchemeSpec::Padded {
                base,
                f1,
                check_lengths,
            } => pad_adapter(base.resolve(manifest_family)?, *f1, check_lengths),
            SchemeSpec::Identity => Ok(Scheme::Identity),
        }
    }
}

/// Detector descriptor; `suite` expands to every shipped detector
/// applicable at the instance's word length.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum DetectorSpec {
    Constant { bit: u8 },
    SuffixMatch { target: BitString, alpha: u64 },
    PrefixMember,
    ChiSquare { block: u32, quantile: f64 },
    Runs { quantile: f64 },
    Alternation { threshold: f64 },
    ParityCheck,
    Suite,
}

impl DetectorSpec {
    pub fn resolve(
        &self,
        family: Option<&Family>,
        n: u64,
        word_len: u64,
        alpha: u64,
    ) -> Result<Vec<Distinguisher>, Error> {
        Ok(match self {
            DetectorSpec::Constant { bit } => vec![detectors::make_constant(*bit)],
            DetectorSpec::SuffixMatch { target, alpha } => {
                vec![detectors::make_suffix_match(target.clone(), *alpha)]
            }
            DetectorSpec::PrefixMember => {
                let fam = family.ok_or_else(|| {
                    Error::Config("prefix-member needs a family in scope".into())
                })?;
                vec![detectors::make_prefix_member(fam, n)?]
            }
            DetectorSpec::ChiSquare { block, quantile } => {
                vec![detectors::make_chi_square(*block, *quantile)?]
            }
            DetectorSpec::Runs { quantile } => vec![detectors::make_runs_test(*quantile)?],
            DetectorSpec::Alternation { threshold } => {
                vec![detectors::make_alternation(*threshold)?]
            }
            DetectorSpec::ParityCheck => vec![detectors::make_parity_check()],
            DetectorSpec::Suite => detectors::builtin_suite(word_len, alpha, family, n),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    Estimate,
    Exact,
}

/// The hiding-game experiment manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameManifest {
    pub experiment_id: String,
    pub family: Family,
    pub scheme: SchemeSpec,
    pub distinguishers: Vec<DetectorSpec>,
    pub indices: Vec<u64>,
    pub message_mode: MessageMode,
    pub key_mode: KeyMode,
    pub trials: u64,
    pub delta: f64,
    pub mode: RunMode,
    /// Coefficients of the threshold polynomial 𝔭, constant term first.
    pub threshold_poly: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
}

/// The PRNG-game experiment manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrngManifest {
    pub experiment_id: String,
    pub generator: Generator,
    pub distinguishers: Vec<DetectorSpec>,
    pub seed_length: u64,
    pub out_lengths: Vec<u64>,
    pub trials: u64,
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
}

/// One result row; every field is already formatted for output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment_id: String,
    pub n: u64,
    pub distinguisher: String,
    pub p_stego: String,
    pub p_cover: String,
    pub advantage: String,
    pub half_width: String,
    pub exact: bool,
    pub verdict: String,
    pub threshold: String,
    pub trials: u64,
    pub master_seed: u64,
    pub advantage_exact: String,
    pub tool_version: String,
    pub config_digest: String,
}

/// Probabilities carry 10 significant digits; all values in [0,1].
fn fmt_prob(x: f64) -> String {
    format!("{x:.10}")
}

fn rational_string(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn config_digest<T: Serialize>(manifest: &T, master_seed: u64) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_string(manifest).expect("serializable manifest"));
    hasher.update(master_seed.to_le_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn report_row(
    experiment_id: &str,
    n: u64,
    d_name: &str,
    report: &AdvantageReport,
    verdict: String,
    threshold: String,
    master_seed: u64,
    digest: &str,
) -> ResultRow {
    ResultRow {
        experiment_id: experiment_id.to_string(),
        n,
        distinguisher: d_name.to_string(),
        p_stego: fmt_prob(report.p_stego),
        p_cover: fmt_prob(report.p_cover),
        advantage: fmt_prob(report.advantage),
        half_width: fmt_prob(report.half_width),
        exact: report.exact,
        verdict,
        threshold,
        trials: report.trials,
        master_seed,
        advantage_exact: report
            .advantage_exact
            .as_ref()
            .map(rational_string)
            .unwrap_or_default(),
        tool_version: TOOL_VERSION.to_string(),
        config_digest: digest.to_string(),
    }
}

/// Run every (index, distinguisher) cell of a hiding-game manifest.
pub fn run_game_manifest(
    manifest: &GameManifest,
    master_seed: u64,
) -> Result<Vec<ResultRow>, Error> {
    let scheme = manifest.scheme.resolve(Some(&manifest.family))?;
    let policy = ThresholdPolicy::new(Polynomial(manifest.threshold_poly.clone()))?;
    let digest = config_digest(manifest, master_seed);
    let alpha = match &manifest.family {
        Family::PrefixUniform(f) => f.alpha,
        _ => 0,
    };

    let mut rows = Vec::new();
    let mut row_index = 0u64;
    for &n in &manifest.indices {
        let word_len = manifest.family.support_length(n)?;
        for spec in &manifest.distinguishers {
            for d in spec.resolve(Some(&manifest.family), n, word_len, alpha)? {
                let cfg = GameConfig {
                    family: &manifest.family,
                    scheme: &scheme,
                    n,
                    message_mode: manifest.message_mode.clone(),
                    key_mode: manifest.key_mode.clone(),
                    trials: manifest.trials,
                    delta: manifest.delta,
                };
                let report = match manifest.mode {
                    RunMode::Estimate => {
                        estimate_advantage(&cfg, &d, derive_seed(master_seed, row_index))?
                    }
                    RunMode::Exact => exact_advantage(&cfg, &d)?,
                };
                let key_len = manifest.key_mode.key_len();
                let verdict = secure_hiding_verdict(&report, &policy, n, key_len).to_string();
                let threshold = fmt_prob(policy.threshold(n, key_len));
                rows.push(report_row(
                    &manifest.experiment_id,
                    n,
                    &d.name,
                    &report,
                    verdict,
                    threshold,
                    master_seed,
                    &digest,
                ));
                row_index += 1;
            }
        }
    }
    Ok(rows)
}

/// Run every (out_len, distinguisher) cell of a PRNG-game manifest.
pub fn run_prng_manifest(
    manifest: &PrngManifest,
    master_seed: u64,
) -> Result<Vec<ResultRow>, Error> {
    let digest = config_digest(manifest, master_seed);
    let mut rows = Vec::new();
    let mut row_index = 0u64;
    for &out_len in &manifest.out_lengths {
        for spec in &manifest.distinguishers {
            for d in spec.resolve(None, 0, out_len, 0)? {
                let report = crate::game::prng_advantage(
                    &manifest.generator,
                    &d,
                    manifest.seed_length,
                    out_len,
                    manifest.trials,
                    manifest.delta,
                    derive_seed(master_seed, row_index),
                )?;
                rows.push(report_row(
                    &manifest.experiment_id,
                    out_len,
                    &d.name,
                    &report,
                    String::new(),
                    String::new(),
                    master_seed,
                    &digest,
                ));
                row_index += 1;
            }
        }
    }
    Ok(rows)
}

/// RFC-4180-style CSV with a mandatory header row.
pub fn rows_to_csv(rows: &[ResultRow]) -> Result<String, Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Format(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn rows_to_json(rows: &[ResultRow]) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Format;
    use crate::probsets::LengthRule;

    fn manifest() -> GameManifest {
        GameManifest {
            experiment_id: "demo".into(),
            family: crate::probsets::make_prefix_uniform(
                2,
                BitString::parse("10", Format::BinaryText).unwrap(),
                LengthRule::Identity,
                (3, 24),
            )
            .unwrap(),
            scheme: SchemeSpec::XorPrefix {
                generator: crate::prng::make_arx_stream_generator(),
                strict: false,
                family: None,
            },
            distinguishers: vec![
                DetectorSpec::Constant { bit: 1 },
                DetectorSpec::ChiSquare {
                    block: 1,
                    quantile: 0.999,
                },
            ],
            indices: vec![8, 10],
            message_mode: MessageMode::Uniform,
            key_mode: KeyMode::Uniform { seed_length: 16 },
            trials: 500,
            delta: 0.05,
            mode: RunMode::Estimate,
            threshold_poly: vec![0.0, 1.0],
            master_seed: None,
        }
    }

    #[test]
    fn rows_are_deterministic() {
        let m = manifest();
        let a = run_game_manifest(&m, 42).unwrap();
        let b = run_game_manifest(&m, 42).unwrap();
        assert_eq!(rows_to_csv(&a).unwrap(), rows_to_csv(&b).unwrap());
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn constant_detector_row_has_zero_advantage() {
        let m = manifest();
        let rows = run_game_manifest(&m, 7).unwrap();
        assert_eq!(rows[0].advantage, "0.0000000000");
        assert_eq!(rows[0].master_seed, 7);
        assert!(!rows[0].config_digest.is_empty());
    }

    #[test]
    fn exact_mode_records_rational() {
        let mut m = manifest();
        m.mode = RunMode::Exact;
        m.key_mode = KeyMode::Fixed {
            bits: BitString::parse("10110100", Format::BinaryText).unwrap(),
        };
        let rows = run_game_manifest(&m, 1).unwrap();
        for row in rows {
            assert!(row.exact);
            assert_eq!(row.advantage_exact, "0/1");
            assert_eq!(row.verdict, "PASS");
        }
    }

    #[test]
    fn manifest_json_round_trip() {
        let m = manifest();
        let text = serde_json::to_string(&m).unwrap();
        let back: GameManifest = serde_json::from_str(&text).unwrap();
        assert_eq!(back.experiment_id, "demo");
        assert_eq!(back.indices, vec![8, 10]);
    }

    #[test]
    fn prng_manifest_runs() {
        let m = PrngManifest {
            experiment_id: "prng".into(),
            generator: crate::prng::make_lcg_lsb_generator(
                crate::prng::LCG_DEFAULT_A,
                crate::prng::LCG_DEFAULT_C,
            )
            .unwrap(),
            distinguishers: vec![DetectorSpec::Alternation { threshold: 0.9 }],
            seed_length: 32,
            out_lengths: vec![64],
            trials: 500,
            delta: 0.05,
            master_seed: None,
        };
        let rows = run_prng_manifest(&m, 3).unwrap();
        assert_eq!(rows.len(), 1);
        let adv: f64 = rows[0].advantage.parse().unwrap();
        assert!(adv >= 0.9, "advantage {adv}");
    }

    #[test]
    fn csv_has_header_and_quoting() {
        let m = manifest();
        let rows = run_game_manifest(&m, 5).unwrap();
        let csv_text = rows_to_csv(&rows).unwrap();
        let mut lines = csv_text.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("experiment_id,n,distinguisher,p_stego,p_cover,advantage"));
        // detector names contain commas and must be quoted
        assert!(csv_text.contains("\"chi-square(block=1,q=0.999)\""));
    }
}
