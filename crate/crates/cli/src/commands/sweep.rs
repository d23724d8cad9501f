//! `sweep`: distances from one target response to sampled responses at
//! every panel count, min-max normalized per metric.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use crate::commands::load_study_entries;
use crate::config::RunConfig;
use crate::output::write_atomic;
use revsim_core::evaluation::report::write_sweep_csv;
use revsim_core::evaluation::svg::sweep_svg;
use revsim_core::evaluation::{normalize_min_max, sweep_experiment};

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run configuration (manifest, metrics, preprocessing, seeds).
    #[arg(long)]
    pub config: PathBuf,
    /// Manifest id of the target response.
    #[arg(long)]
    pub target: String,
    /// Responses sampled per panel count.
    #[arg(long = "n-per-group", default_value_t = 50)]
    pub n_per_group: usize,
    /// Also emit a combined curve SVG.
    #[arg(long)]
    pub svg: bool,
}

pub fn run(args: &SweepArgs, cfg: &RunConfig) -> Result<()> {
    let manifest_path = cfg.manifest_path()?;
    let pool = load_study_entries(manifest_path)?;
    let target = pool
        .iter()
        .find(|e| e.id == args.target)
        .with_context(|| format!("target {:?} not found in the manifest", args.target))?;
    let mic = target.mic_position;
    let groups_at_mic = pool
        .iter()
        .filter(|e| e.mic_position == mic && e.id != args.target)
        .count();
    if groups_at_mic == 0 {
        bail!(
            "insufficient data: no other entry shares the target's microphone position {mic}"
        );
    }

    let metric_cfg = cfg.metric_config()?;
    let out_dir = cfg.resolve_output_dir();
    let mut curves = Vec::new();
    for &metric in &cfg.metrics {
        let curve = sweep_experiment(
            &args.target,
            &pool,
            args.n_per_group,
            metric,
            &metric_cfg,
            &cfg.preprocess,
            cfg.seed,
        )
        .with_context(|| format!("sweep under {metric}"))?;
        let normalized =
            normalize_min_max(&curve).with_context(|| format!("normalizing {metric} sweep"))?;
        let mut bytes = Vec::new();
        write_sweep_csv(&mut bytes, &normalized)
            .with_context(|| format!("serializing {metric} sweep"))?;
        write_atomic(&out_dir.join(format!("sweep_{metric}.csv")), &bytes)?;
        curves.push(normalized);
    }

    if args.svg {
        write_atomic(&out_dir.join("sweep.svg"), sweep_svg(&curves).as_bytes())?;
    }
    println!(
        "sweep: target {:?} against {} panel group(s) under {} metric(s)",
        args.target,
        curves.first().map(|c| c.delta.len()).unwrap_or(0),
        curves.len()
    );
    Ok(())
}
