//! Command-line driver: `mzsim run <config> [overrides]`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{parse_config, ConfigDocument, ConfigError, DEFAULT_GAIN};
use crate::emit::{write_summary_csv, JsonlWriter, SummaryRow};
use crate::experiments::{run_experiment, Discard, ExperimentError};
use crate::selection::EngineKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mzsim",
    version,
    about = "Photon-by-photon interferometry simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a config file and write a CSV summary.
    Run(RunArgs),
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Experiment config file.
    pub config: PathBuf,
    /// Override the photon count per run.
    #[arg(long)]
    pub photons: Option<u64>,
    /// Override the base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination (default: the config's `output`, else stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the per-photon event log as JSON lines.
    #[arg(long)]
    pub events: Option<PathBuf>,
    /// Override the engine: born, rebalance_greedy, rebalance_biased[:gain].
    #[arg(long)]
    pub engine: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Override(String),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Config(_) | CliError::Override(_) => EXIT_CONFIG,
            CliError::Experiment(ExperimentError::Config(_)) => EXIT_CONFIG,
            CliError::Experiment(_) | CliError::Io(_) => EXIT_RUNTIME,
        }
    }
}

/// Parses an `--engine` value. A bare `rebalance_biased` keeps the gain of
/// `current` when it is already biased.
pub fn parse_engine_override(
    value: &str,
    current: EngineKind<f64>,
) -> Result<EngineKind<f64>, CliError> {
    let (name, gain) = match value.split_once([':', '=']) {
        Some((n, g)) => (n, Some(g)),
        None => (value, None),
    };
    let bad = || CliError::Override(format!("invalid --engine value `{value}`"));
    match (name, gain) {
        ("born", None) => Ok(EngineKind::Born),
        ("rebalance_greedy", None) => Ok(EngineKind::RebalanceGreedy),
        ("rebalance_biased", Some(g)) => {
            let gain: f64 = g.parse().map_err(|_| bad())?;
            let kind = EngineKind::RebalanceBiased { gain };
            kind.validate()
                .map_err(|e| CliError::Override(e.to_string()))?;
            Ok(kind)
        }
        ("rebalance_biased", None) => Ok(match current {
            EngineKind::RebalanceBiased { gain } => EngineKind::RebalanceBiased { gain },
            _ => EngineKind::RebalanceBiased { gain: DEFAULT_GAIN },
        }),
        _ => Err(bad()),
    }
}

/// Applies command-line overrides to a parsed document.
pub fn apply_overrides(doc: &mut ConfigDocument, args: &RunArgs) -> Result<(), CliError> {
    if let Some(n) = args.photons {
        if n == 0 {
            return Err(CliError::Override("--photons must be at least 1".into()));
        }
        doc.photons = n;
    }
    if let Some(s) = args.seed {
        doc.seed = s;
    }
    if let Some(e) = &args.engine {
        doc.engine = parse_engine_override(e, doc.engine)?;
    }
    Ok(())
}

/// Runs every sweep point and replica. Rows come back in sweep order.
pub fn run_document(doc: &ConfigDocument) -> Result<Vec<SummaryRow>, CliError> {
    let points = doc.sweep_points()?;
    let replicas = doc.replicas;
    points
        .par_iter()
        .enumerate()
        .map(|(i, pt)| {
            let mut row: Option<SummaryRow> = None;
            for r in 0..replicas {
                let summary = run_experiment(&pt.replica(i, r, replicas), &mut Discard)?;
                match row.as_mut() {
                    Some(row) => row.absorb(&summary),
                    None => row = Some(SummaryRow::from_summary(pt.param, pt.value, &summary)),
                }
            }
            Ok(row.expect("replicas >= 1"))
        })
        .collect()
}

/// Runs a single-point, single-replica document, streaming its events.
pub fn run_with_events<W: Write>(
    doc: &ConfigDocument,
    events: W,
) -> Result<Vec<SummaryRow>, CliError> {
    let points = doc.sweep_points()?;
    if points.len() != 1 || doc.replicas != 1 {
        return Err(CliError::Override(
            "--events needs a single run (no sweep, replicas 1)".into(),
        ));
    }
    let pt = &points[0];
    let mut sink = JsonlWriter::new(events);
    let summary = run_experiment(&pt.replica(0, 0, 1), &mut sink)?;
    sink.into_inner()?;
    Ok(vec![SummaryRow::from_summary(pt.param, pt.value, &summary)])
}

/// Comment line written above the CSV header.
pub fn header_comment(doc: &ConfigDocument) -> String {
    let engine = match doc.engine {
        EngineKind::RebalanceBiased { gain } => format!("rebalance_biased:{gain}"),
        other => other.name().to_string(),
    };
    format!(
        "# mzsim experiment={} engine={} photons={} seed={} replicas={}",
        doc.experiment.as_str(),
        engine,
        doc.photons,
        doc.seed,
        doc.replicas
    )
}

pub fn execute(args: &RunArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| CliError::Read {
        path: args.config.clone(),
        source,
    })?;
    let mut doc = parse_config(&text)?;
    apply_overrides(&mut doc, args)?;
    doc.validate()?;

    let rows = match &args.events {
        Some(path) => run_with_events(&doc, BufWriter::new(File::create(path)?))?,
        None => run_document(&doc)?,
    };

    let out_path = args
        .out
        .clone()
        .or_else(|| doc.output.as_ref().map(PathBuf::from));
    let mut out: Box<dyn Write> = match out_path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(out, "{}", header_comment(&doc))?;
    write_summary_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

/// Entry point; returns the process exit code.
pub fn cli_main<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let Command::Run(run) = cli.command;
    match execute(&run) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("mzsim: {e}");
            e.exit_code()
        }
    }
}
