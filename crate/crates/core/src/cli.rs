//! Command-line front end. `run` writes the command's primary output to the
//! given writer so that it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::crepant::CrepantReport;
use crate::error::{Error, Result};
use crate::hodge::Convention;
use crate::pipeline::analyze::{AnalysisOptions, AnalysisRecord};
use crate::pipeline::batch::{
    analyze_systems, filter_enumeration, filter_systems, with_jobs, FilterSummary,
};
use crate::pipeline::cache::{analyze_cached, Cache, CACHE_ENV};
use crate::pipeline::ingest::{ingest_weight_list, IngestMode};
use crate::pipeline::report::{emit_table, TableFormat};
use crate::polytope::dump::write_points;
use crate::polytope::toric::pair_from_weights;
use crate::singularity::QuotientSingularityType;
use crate::weights::WeightSystem;

#[derive(Debug, Parser)]
#[command(
    name = "spin7",
    version,
    about = "Weighted Calabi-Yau 4-orbifolds with a real structure and the Betti numbers of their Spin(7) quotients"
)]
pub struct Cli {
    /// Directory for cached analysis records.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Weight list, six integers per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Enumerate all weight systems with entries up to MAXW.
    #[arg(long, value_name = "MAXW")]
    pub enumerate: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the four-stage filter and write the survivors as JSON.
    Filter {
        #[command(flatten)]
        source: Source,
        /// Abort on the first malformed input line.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        output: PathBuf,
    },
    /// Full analysis of one weight system, as a JSON report.
    Analyze {
        /// Comma-separated weights, e.g. "1,1,9,9,4,4".
        #[arg(long)]
        weights: String,
        /// Only the family member with J swapped point pairs.
        #[arg(long, value_name = "J")]
        swapped_pairs: Option<usize>,
        /// Hodge correction convention: standard or uncorrected.
        #[arg(long, value_name = "C", default_value = "standard")]
        convention: Convention,
        /// Also write the lattice points of both polytopes to this directory.
        #[arg(long, value_name = "DIR")]
        dump: Option<PathBuf>,
    },
    /// Crepant resolvability of a cyclic quotient singularity.
    Crepant {
        /// Singularity type as "m:b1,b2,b3,b4".
        #[arg(long = "type", value_name = "TYPE")]
        kind: String,
    },
    /// Betti number table of the filter survivors.
    Table {
        #[arg(long, default_value = "md")]
        format: TableFormat,
        /// Weight list to tabulate instead of the enumeration.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Enumeration bound used when no input is given.
        #[arg(
            long,
            value_name = "MAXW",
            default_value_t = 69,
            conflicts_with = "input"
        )]
        enumerate: u64,
        #[arg(long, value_name = "C", default_value = "standard")]
        convention: Convention,
        #[arg(long)]
        strict: bool,
    },
}

fn mode(strict: bool) -> IngestMode {
    if strict {
        IngestMode::Strict
    } else {
        IngestMode::Lenient
    }
}

fn survivors_of(summary: &FilterSummary) -> Result<Vec<WeightSystem>> {
    summary
        .survivors
        .iter()
        .map(|r| WeightSystem::ordered(r.weights))
        .collect()
}

fn filter_source(
    input: Option<&PathBuf>,
    enumerate: Option<u64>,
    strict: bool,
) -> Result<FilterSummary> {
    match (input, enumerate) {
        (Some(path), None) => {
            let ingested = ingest_weight_list(path, mode(strict))?;
            let mut summary = filter_systems(&path.display().to_string(), &ingested.systems);
            summary.warnings = ingested.warnings;
            Ok(summary)
        }
        (None, Some(max)) => Ok(filter_enumeration(max)),
        _ => Err(Error::Usage(
            "give exactly one of --input or --enumerate".into(),
        )),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let cache = cli.cache_dir.as_ref().map(Cache::open).transpose()?;
    let jobs = cli.jobs;
    match cli.command {
        Command::Filter {
            source,
            strict,
            output,
        } => {
            let summary = with_jobs(jobs, || {
                filter_source(source.input.as_ref(), source.enumerate, strict)
            })??;
            let mut text = serde_json::to_string_pretty(&summary)?;
            text.push('\n');
            std::fs::write(&output, text)?;
            for w in &summary.warnings {
                eprintln!("warning: {w}");
            }
            writeln!(
                out,
                "{} examined, {} survivors -> {}",
                summary.examined,
                summary.survivors.len(),
                output.display()
            )?;
        }
        Command::Analyze {
            weights,
            swapped_pairs,
            convention,
            dump,
        } => {
            let ws: WeightSystem = weights.parse()?;
            let options = AnalysisOptions {
                convention,
                swapped_pairs,
            };
            let record: AnalysisRecord =
                with_jobs(jobs, || analyze_cached(&ws, &options, cache.as_ref()))??;
            if let Some(dir) = dump {
                std::fs::create_dir_all(&dir)?;
                let profile = WeightSystem::ordered(record.weights)?;
                let (_, pair) = pair_from_weights(&profile)?;
                let header = |what: &str| {
                    format!(
                        "{what} for weights {}\none lattice point per line",
                        profile.label()
                    )
                };
                std::fs::write(
                    dir.join("delta.txt"),
                    write_points(&header("Δ"), &pair.delta.points),
                )?;
                std::fs::write(
                    dir.join("dual.txt"),
                    write_points(&header("Δ*"), &pair.delta_star.points),
                )?;
            }
            writeln!(out, "{}", record.to_json()?)?;
        }
        Command::Crepant { kind } => {
            let t: QuotientSingularityType = kind.parse()?;
            let report = CrepantReport::new(&t);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        Command::Table {
            format,
            input,
            enumerate,
            convention,
            strict,
        } => {
            let options = AnalysisOptions {
                convention,
                swapped_pairs: None,
            };
            let records = with_jobs(jobs, || -> Result<Vec<AnalysisRecord>> {
                let summary = match &input {
                    Some(p) => filter_source(Some(p), None, strict)?,
                    None => filter_source(None, Some(enumerate), strict)?,
                };
                for w in &summary.warnings {
                    eprintln!("warning: {w}");
                }
                analyze_systems(&survivors_of(&summary)?, &options, cache.as_ref())
            })??;
            write!(out, "{}", emit_table(&records, format)?)?;
        }
    }
    Ok(())
}
