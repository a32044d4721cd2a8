//! `divembed`: generate instances, check axioms, embed into ℓ1, measure distortion, benchmark.

mod bench;
mod gen;
mod methods;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use divembed::instance::{DiversitySpec, Instance};
use divembed::oracle::parse_mask_key;
use divembed::{check_diversity_axioms, exact_distortion, sampled_distortion, DistortionReport, Error, PointEmbedding};

use crate::gen::{GenKind, GenParams};
use crate::methods::{EmbedOptions, Method};

#[derive(Parser, Debug)]
#[command(name = "divembed", version, about = "Finite diversities, ℓ1 embeddings and distortion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Diameter,
    Steiner,
    Ball,
    Tsp,
    Discrete,
    Cardinality,
    L1,
}

impl Target {
    fn spec(self) -> DiversitySpec {
        match self {
            Self::Diameter => DiversitySpec::Diameter,
            Self::Steiner => DiversitySpec::Steiner,
            Self::Ball => DiversitySpec::Ball,
            Self::Tsp => DiversitySpec::Tsp,
            Self::Discrete => DiversitySpec::Discrete,
            Self::Cardinality => DiversitySpec::Cardinality,
            Self::L1 => DiversitySpec::L1,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random or fixed-shape instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[command(flatten)]
        params: GenParams,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the diversity axioms exhaustively (n <= 12). Exit code 1 on violation.
    Check {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the diversity on one subset, given as comma-separated indices.
    Eval {
        instance: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Embed an instance into ℓ1.
    Embed {
        instance: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        opts: EmbedOptions,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Distortion of an embedding against the instance's diversity.
    Distortion {
        instance: PathBuf,
        embedding: PathBuf,
        /// Scan every subset (the default; n <= 24).
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        /// Scan all pairs, the full set and N random subsets instead.
        #[arg(long)]
        samples: Option<usize>,
        /// Seed for sampled mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Measure against this diversity on the instance's metric instead.
        #[arg(long, value_enum)]
        target: Option<Target>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Distortion statistics over random instances, one CSV row per trial.
    Bench {
        #[command(flatten)]
        plan: bench::BenchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    Instance::read(path).with_context(|| format!("reading instance {}", path.display()))
}

fn read_embedding(path: &Path) -> anyhow::Result<PointEmbedding> {
    let text = fs::read_to_string(path).with_context(|| format!("reading embedding {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(Error::from)
        .with_context(|| format!("parsing embedding {}", path.display()))
}

fn masks(ms: &[divembed::SubsetMask]) -> String {
    ms.iter().map(|m| divembed::oracle::mask_key(*m)).collect::<Vec<_>>().join(" | ")
}

fn report_csv(r: &DistortionReport) -> anyhow::Result<String> {
    csv_string(
        &["c1", "c2", "c", "witness_min", "witness_max", "mode", "subsets_scanned"],
        [vec![
            bench::fmt_float(r.c1),
            bench::fmt_float(r.c2),
            r.c.to_string(),
            masks(&[r.witness_min]),
            masks(&[r.witness_max]),
            r.mode.to_string(),
            r.subsets_scanned.to_string(),
        ]],
    )
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen {
            kind,
            params,
            seed,
            out,
        } => {
            let inst = gen::generate(kind, &params, seed)?;
            inst.oracle()?;
            emit(out.as_deref(), &json(&inst)?)?;
        }
        Command::Check { instance, out, format } => {
            let inst = read_instance(&instance)?;
            let report = check_diversity_axioms(&inst.oracle()?)?;
            let text = match format {
                Format::Json => json(&report)?,
                Format::Csv => csv_string(
                    &["axiom", "witness", "lhs", "rhs"],
                    report.violations.iter().map(|v| {
                        vec![
                            serde_json::to_value(v.axiom).unwrap().as_str().unwrap_or_default().to_string(),
                            masks(&v.witness),
                            v.lhs.to_string(),
                            v.rhs.to_string(),
                        ]
                    }),
                )?,
            };
            emit(out.as_deref(), &text)?;
            if !report.passed {
                let first = &report.violations[0];
                eprintln!(
                    "{} violation(s); first: {:?} on [{}] ({} > {})",
                    report.violation_count,
                    first.axiom,
                    masks(&first.witness),
                    first.lhs,
                    first.rhs
                );
                return Ok(ExitCode::from(1));
            }
        }
        Command::Eval { instance, subset } => {
            let inst = read_instance(&instance)?;
            let oracle = inst.oracle()?;
            let mask = parse_mask_key(&subset, oracle.len())?;
            println!("{}", oracle.try_eval(mask)?);
        }
        Command::Embed {
            instance,
            method,
            opts,
            seed,
            out,
            format,
        } => {
            let inst = read_instance(&instance)?;
            let emb = methods::embed(&inst, method, &opts, seed)?;
            let text = match format {
                Format::Json => json(&emb)?,
                Format::Csv => {
                    let header: Vec<String> = (0..emb.k()).map(|j| format!("x{j}")).collect();
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    csv_string(
                        &header,
                        emb.rows().into_iter().map(|r| r.iter().map(f64::to_string).collect()),
                    )?
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Distortion {
            instance,
            embedding,
            exact: _,
            samples,
            seed,
            target,
            out,
            format,
        } => {
            let mut inst = read_instance(&instance)?;
            if let Some(t) = target {
                inst.diversity = t.spec();
            }
            let oracle = inst.oracle()?;
            let emb = read_embedding(&embedding)?;
            let report = match samples {
                Some(count) => sampled_distortion(&oracle, &emb, count, seed)?,
                None => exact_distortion(&oracle, &emb)?,
            };
            let text = match format {
                Format::Json => json(&report)?,
                Format::Csv => report_csv(&report)?,
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Bench { plan, out, format } => {
            let rows = bench::run(&plan)?;
            let text = match format {
                Format::Csv => bench::to_csv(&rows)?,
                Format::Json => json(&rows)?,
            };
            emit(out.as_deref(), &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// 1 for invalid input or failed checks, 2 for exceeded size caps, 3 for I/O.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::CapExceeded { .. } => 2,
                Error::Io(_) => 3,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<csv::Error>() {
            return if e.is_io_error() { 3 } else { 1 };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
