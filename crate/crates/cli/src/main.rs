//! Command-line harness for late-reverberation similarity experiments:
//! corpus synthesis, preprocessing, pairwise metric studies, median
//! aggregation, and gradual-difference sweeps.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{aggregate, compute, preprocess, sweep, synth};
use config::{parse_metric_list, Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "revsim", version, about = "Late-reverberation similarity toolkit")]
struct Cli {
    /// Master seed; overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for pair computation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Comma-separated metric subset (pc,edc,mss,esr); overrides the config.
    #[arg(long, global = true)]
    metrics: Option<String>,
    /// Output directory; falls back to REVSIM_OUTPUT_DIR, then the
    /// current directory.
    #[arg(long = "output-dir", global = true)]
    output_dir: Option<PathBuf>,
    /// Manifest path; overrides the config file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic corpus plus its manifest.
    Synth(synth::SynthArgs),
    /// Trim a corpus to late reverberation; write audio and an onset report.
    Preprocess(preprocess::PreprocessArgs),
    /// Evaluate metrics over all ordered pairs; write raw and standardized CSVs.
    Compute(compute::ComputeArgs),
    /// Aggregate results into median matrices (optionally as heatmaps).
    Aggregate(aggregate::AggregateArgs),
    /// Distance evolution against one target over panel-count differences.
    Sweep(sweep::SweepArgs),
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let overrides = Overrides {
        seed: cli.seed,
        metrics: cli.metrics.as_deref().map(parse_metric_list).transpose()?,
        output_dir: cli.output_dir.clone(),
        manifest: cli.manifest.clone(),
    };

    match &cli.command {
        Command::Synth(args) => {
            let out = cli
                .output_dir
                .or_else(|| std::env::var_os("REVSIM_OUTPUT_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            synth::run(args, cli.seed.unwrap_or(0), &out)
        }
        Command::Preprocess(args) => {
            let cfg = load_config(&args.config, &overrides)?;
            preprocess::run(&cfg)
        }
        Command::Compute(args) => {
            let cfg = load_config(&args.config, &overrides)?;
            compute::run(&cfg)
        }
        Command::Aggregate(args) => {
            let out = cli
                .output_dir
                .or_else(|| std::env::var_os("REVSIM_OUTPUT_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            aggregate::run(args, &out)
        }
        Command::Sweep(args) => {
            let cfg = load_config(&args.config, &overrides)?;
            sweep::run(args, &cfg)
        }
    }
}

fn load_config(path: &PathBuf, overrides: &Overrides) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(path)?;
    cfg.apply(overrides);
    cfg.validate()?;
    Ok(cfg)
}
