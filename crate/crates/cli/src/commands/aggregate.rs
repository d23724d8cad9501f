//! `aggregate`: fold a results file into per-metric median matrices over a
//! group key, with an optional panel-count filter and heatmap output.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use crate::output::write_atomic;
use revsim_core::dataset::{load_manifest, PanelBins};
use revsim_core::evaluation::report::{read_results_csv, write_median_matrix_csv};
use revsim_core::evaluation::svg::heatmap_svg;
use revsim_core::evaluation::{
    median_by_group, EntryInfo, GroupKey, MedianMatrix, PairwiseStudy, PanelRange,
};
use revsim_core::metrics::{MetricKind, MetricResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupByArg {
    Partition,
    Mic,
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    /// Results CSV produced by `compute` (standardized file preferred).
    #[arg(long)]
    pub results: PathBuf,
    /// Manifest supplying panel counts and microphone positions.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long = "group-by", value_enum, default_value = "partition")]
    pub group_by: GroupByArg,
    /// Keep only pairs whose two entries both lie in this inclusive
    /// panel-count range, written `lo:hi`.
    #[arg(long = "filter-panels")]
    pub filter_panels: Option<String>,
    /// Exclude self-pairs from the medians.
    #[arg(long = "no-self-pairs")]
    pub no_self_pairs: bool,
    /// Also emit one heatmap SVG per metric.
    #[arg(long)]
    pub svg: bool,
}

fn parse_range(text: &str) -> Result<PanelRange> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("range {text:?} is not of the form lo:hi"))?;
    let range = PanelRange {
        min: lo.trim().parse().context("range low bound")?,
        max: hi.trim().parse().context("range high bound")?,
    };
    if range.min > range.max {
        bail!("empty panel range {text:?}");
    }
    Ok(range)
}

pub fn run(args: &AggregateArgs, output_dir: &PathBuf) -> Result<()> {
    let rows = read_results_csv(
        File::open(&args.results)
            .with_context(|| format!("opening {}", args.results.display()))?,
    )
    .with_context(|| format!("parsing {}", args.results.display()))?;
    if rows.is_empty() {
        bail!("results file {} holds no rows", args.results.display());
    }

    let entries = load_manifest(&args.manifest)
        .with_context(|| format!("loading manifest {}", args.manifest.display()))?;
    let bins = PanelBins::default_bins();
    let index: BTreeMap<String, EntryInfo> = entries
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                EntryInfo {
                    partition: bins.label_for(e.n_reflective_panels),
                    n_reflective_panels: e.n_reflective_panels,
                    mic_position: e.mic_position,
                },
            )
        })
        .collect();

    let mut by_metric: BTreeMap<MetricKind, Vec<MetricResult>> = BTreeMap::new();
    for row in rows {
        for id in [&row.ref_id, &row.analyzed_id] {
            if !index.contains_key(id) {
                bail!("result references id {id:?} absent from the manifest");
            }
        }
        by_metric.entry(row.metric).or_default().push(MetricResult {
            metric: row.metric,
            value: row.value_std.unwrap_or(row.value),
            ref_id: row.ref_id,
            analyzed_id: row.analyzed_id,
            config_digest: String::new(),
        });
    }

    let key = match args.group_by {
        GroupByArg::Partition => GroupKey::Partition,
        GroupByArg::Mic => GroupKey::MicPosition,
    };
    let filter = args.filter_panels.as_deref().map(parse_range).transpose()?;

    let mut matrices: Vec<MedianMatrix> = Vec::new();
    for (metric, results) in by_metric {
        let study = PairwiseStudy {
            metric,
            config_digest: String::new(),
            seed: 0,
            standardized: true,
            results,
            failures: vec![],
            index: index.clone(),
        };
        let matrix = median_by_group(&study, key, filter, !args.no_self_pairs)
            .with_context(|| format!("aggregating {metric}"))?;
        let mut bytes = Vec::new();
        write_median_matrix_csv(&mut bytes, &matrix)
            .with_context(|| format!("serializing {metric} matrix"))?;
        write_atomic(
            &output_dir.join(format!("median_{metric}_{}.csv", key.name())),
            &bytes,
        )?;
        matrices.push(matrix);
    }

    if args.svg {
        // Shared color limits across the metrics in this invocation.
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for m in &matrices {
            if let Some((a, b)) = m.value_range() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        for m in &matrices {
            let svg = heatmap_svg(m, lo, hi);
            write_atomic(
                &output_dir.join(format!("median_{}_{}.svg", m.metric, key.name())),
                svg.as_bytes(),
            )?;
        }
    }
    println!(
        "aggregate: wrote {} median matrix file(s) grouped by {}",
        matrices.len(),
        key.name()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r = parse_range("35:49").unwrap();
        assert_eq!((r.min, r.max), (35, 49));
        assert!(parse_range("49:35").is_err());
        assert!(parse_range("35-49").is_err());
    }
}
