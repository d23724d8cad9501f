//! `compute`: the pairwise protocol. Optionally subsamples each
//! panel-count partition, evaluates every ordered pair under the selected
//! metrics, and writes raw plus standardized results.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;

use crate::commands::load_entries;
use crate::config::RunConfig;
use crate::output::write_atomic;
use revsim_core::dataset::{load_manifest_resolved, partition_by_panels, sample_subset, PanelBins};
use revsim_core::evaluation::report::{write_raw_results_csv, write_std_results_csv};
use revsim_core::evaluation::{pairwise_matrix, standardize_study};

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Run configuration (manifest, metrics, preprocessing, seeds).
    #[arg(long)]
    pub config: PathBuf,
}

pub fn run(cfg: &RunConfig) -> Result<()> {
    let started = Instant::now();
    let manifest_path = cfg.manifest_path()?;
    let mut entries = load_manifest_resolved(manifest_path)
        .with_context(|| format!("loading manifest {}", manifest_path.display()))?;

    if let Some(sampling) = &cfg.sampling {
        let bins = PanelBins::default_bins();
        let partitions = partition_by_panels(&entries, &bins);
        let mut sampled = Vec::new();
        for partition in &partitions {
            sampled.extend(
                sample_subset(partition, sampling.per_mic, cfg.seed)
                    .with_context(|| format!("sampling partition {:?}", partition.label))?,
            );
        }
        entries = sampled;
    }

    let items = load_entries(&entries).context("loading corpus audio")?;
    let metric_cfg = cfg.metric_config()?;

    let mut raw_studies = Vec::new();
    let mut std_studies = Vec::new();
    let mut failures = 0usize;
    for &metric in &cfg.metrics {
        let study = pairwise_matrix(&items, metric, &metric_cfg, &cfg.preprocess, cfg.seed)
            .with_context(|| format!("pairwise study under {metric}"))?;
        failures += study.failures.len();
        let standardized =
            standardize_study(&study).with_context(|| format!("standardizing {metric}"))?;
        raw_studies.push(study);
        std_studies.push(standardized);
    }

    let out_dir = cfg.resolve_output_dir();
    let mut raw_bytes = Vec::new();
    let raw_refs: Vec<&_> = raw_studies.iter().collect();
    write_raw_results_csv(&mut raw_bytes, &raw_refs).context("serializing raw results")?;
    write_atomic(&out_dir.join("results_raw.csv"), &raw_bytes)?;

    let mut std_bytes = Vec::new();
    let pairs: Vec<(&_, &_)> = raw_studies.iter().zip(std_studies.iter()).collect();
    write_std_results_csv(&mut std_bytes, &pairs).context("serializing standardized results")?;
    write_atomic(&out_dir.join("results_std.csv"), &std_bytes)?;

    let pair_count: usize = raw_studies.iter().map(|s| s.results.len()).sum();
    println!(
        "compute: {} entries, {} pair results across {} metric(s), {} failure(s), {:.2} s",
        items.len(),
        pair_count,
        cfg.metrics.len(),
        failures,
        started.elapsed().as_secs_f64()
    );
    Ok(())
}
