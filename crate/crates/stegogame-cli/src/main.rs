//! Batch front door: embed/extract bit-string files, run hiding and PRNG
//! games from JSON manifests, validate families, and emit CSV/JSON
//! reports. Non-interactive and deterministic given inputs plus --seed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stegogame::experiment::{
    rows_to_csv, rows_to_json, run_game_manifest, run_prng_manifest, DetectorSpec, GameManifest,
    PrngManifest, SchemeSpec,
};
use stegogame::probsets::{Family, Polynomial};
use stegogame::{BitString, Error, Format};

#[derive(Parser)]
#[command(name = "stegogame", version, about = "Steganographic-security workbench")]
struct Cli {
    /// Master seed for all randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory for report files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a message into a support word.
    Embed {
        scheme_file: PathBuf,
        support_file: PathBuf,
        message_file: PathBuf,
        key_file: PathBuf,
        out_file: PathBuf,
    },
    /// Extract a message from a stego word.
    Extract {
        scheme_file: PathBuf,
        stego_file: PathBuf,
        key_file: PathBuf,
        out_file: PathBuf,
    },
    /// Run a hiding-game manifest and write one report row per
    /// (index, distinguisher).
    Game {
        manifest: PathBuf,
        /// Override the manifest's generator by name
        /// (zero | lcg-lsb | arx-stream).
        #[arg(long)]
        generator: Option<String>,
        /// Replace the manifest's distinguishers; repeatable. Accepts a
        /// JSON descriptor or a plain name.
        #[arg(long = "distinguisher")]
        distinguishers: Vec<String>,
    },
    /// Run a PRNG-game manifest.
    Prngtest {
        manifest: PathBuf,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long = "distinguisher")]
        distinguishers: Vec<String>,
    },
    /// Validate a family descriptor and print the report as JSON.
    Validate {
        family_file: PathBuf,
        /// Coefficients of the declared polynomial bound on ℓ(Sₙ),
        /// constant term first.
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        poly_bound: Vec<f64>,
        /// Largest index to check.
        #[arg(long, default_value_t = 64)]
        n_max: u64,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("STEGOGAME_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            // Caps parallelism only; results do not depend on it.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stegogame: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_word(path: &Path) -> Result<BitString, Error> {
    BitString::parse(&fs::read_to_string(path)?, Format::BinaryText)
}

fn write_word(path: &Path, word: &BitString) -> Result<(), Error> {
    fs::write(path, format!("{word}\n"))?;
    Ok(())
}

fn read_scheme(path: &Path) -> Result<stegogame::schemes::Scheme, Error> {
    let spec: SchemeSpec = serde_json::from_str(&fs::read_to_string(path)?)?;
    spec.resolve(None)
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Embed {
            scheme_file,
            support_file,
            message_file,
            key_file,
            out_file,
        } => {
            let scheme = read_scheme(scheme_file)?;
            let support = read_word(support_file)?;
            let message = read_word(message_file)?;
            let key = read_word(key_file)?;
            let stego = scheme.insert(&support, &message, &key)?;
            write_word(out_file, &stego)
        }
        Command::Extract {
            scheme_file,
            stego_file,
            key_file,
            out_file,
        } => {
            let scheme = read_scheme(scheme_file)?;
            let stego = read_word(stego_file)?;
            let key = read_word(key_file)?;
            let message = scheme.extract(&stego, &scheme.inv_key(&key)?)?;
            write_word(out_file, &message)
        }
        Command::Game {
            manifest,
            generator,
            distinguishers,
        } => {
            let mut manifest: GameManifest = serde_json::from_str(&fs::read_to_string(manifest)?)?;
            if let Some(name) = generator {
                set_generator(&mut manifest.scheme, generator_by_name(name)?);
            }
            if !distinguishers.is_empty() {
                manifest.distinguishers = distinguishers
                    .iter()
                    .map(|d| detector_by_name(d))
                    .collect::<Result<_, _>>()?;
            }
            let seed = manifest.master_seed.unwrap_or(cli.seed);
            let rows = run_game_manifest(&manifest, seed)?;
            write_report(cli, &manifest.experiment_id, &rows)
        }
        Command::Prngtest {
            manifest,
            generator,
            distinguishers,
        } => {
            let mut manifest: PrngManifest = serde_json::from_str(&fs::read_to_string(manifest)?)?;
            if let Some(name) = generator {
                manifest.generator = generator_by_name(name)?;
            }
            if !distinguishers.is_empty() {
                manifest.distinguishers = distinguishers
                    .iter()
                    .map(|d| detector_by_name(d))
                    .collect::<Result<_, _>>()?;
            }
            let seed = manifest.master_seed.unwrap_or(cli.seed);
            let rows = run_prng_manifest(&manifest, seed)?;
            write_report(cli, &manifest.experiment_id, &rows)
        }
        Command::Validate {
            family_file,
            poly_bound,
            n_max,
        } => {
            let family: Family = serde_json::from_str(&fs::read_to_string(family_file)?)?;
            let report = family.validate(&Polynomial(poly_bound.clone()), *n_max);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}

fn generator_by_name(name: &str) -> Result<stegogame::prng::Generator, Error> {
    use stegogame::prng;
    match name {
        "zero" => Ok(prng::make_zero_generator()),
        "lcg-lsb" => prng::make_lcg_lsb_generator(prng::LCG_DEFAULT_A, prng::LCG_DEFAULT_C),
        "arx-stream" => Ok(prng::make_arx_stream_generator()),
        other => Err(Error::Config(format!("unknown generator {other:?}"))),
    }
}

/// A distinguisher override is either a JSON descriptor or a plain name
/// with default parameters.
fn detector_by_name(text: &str) -> Result<DetectorSpec, Error> {
    if text.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    Ok(match text {
        "suite" => DetectorSpec::Suite,
        "constant-0" => DetectorSpec::Constant { bit: 0 },
        "constant-1" => DetectorSpec::Constant { bit: 1 },
        "prefix-member" => DetectorSpec::PrefixMember,
        "parity-check" => DetectorSpec::ParityCheck,
        "chi-square" => DetectorSpec::ChiSquare {
            block: 1,
            quantile: 0.999,
        },
        "runs" => DetectorSpec::Runs { quantile: 0.999 },
        "alternation" => DetectorSpec::Alternation { threshold: 0.9 },
        other => return Err(Error::Config(format!("unknown distinguisher {other:?}"))),
    })
}

fn set_generator(spec: &mut SchemeSpec, g: stegogame::prng::Generator) {
    match spec {
        SchemeSpec::XorPrefix { generator, .. } => *generator = g,
        SchemeSpec::Padded { base, .. } => set_generator(base, g),
        SchemeSpec::Lsb { .. } | SchemeSpec::Identity => {}
    }
}

/// All-or-nothing: rows are fully computed before the file is created.
fn write_report(
    cli: &Cli,
    experiment_id: &str,
    rows: &[stegogame::experiment::ResultRow],
) -> Result<(), Error> {
    fs::create_dir_all(&cli.out)?;
    let (text, ext) = match cli.format {
        ReportFormat::Csv => (rows_to_csv(rows)?, "csv"),
        ReportFormat::Json => (rows_to_json(rows)?, "json"),
    };
    let path = cli.out.join(format!("{experiment_id}.{ext}"));
    fs::write(&path, text)?;
    println!("{}", path.display());
    Ok(())
}
