//! The objective-evaluation protocol: pairwise metric matrices over a
//! sampled corpus, standardization, median aggregation, and the
//! gradual-difference sweep.

pub mod median;
pub mod report;
pub mod svg;
pub mod sweep;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{MetricConfig, MetricKind, MetricResult};
use crate::preprocess::{align_pair, preprocess_signal, PreprocessConfig};
use crate::signal::Signal;

pub use median::{median_by_group, GroupKey, MedianMatrix, PanelRange};
pub use sweep::{normalize_min_max, sweep_experiment, SweepCurve};

/// One corpus item entering a study: identity, grouping metadata, and the
/// raw (untrimmed) signal.
#[derive(Debug, Clone)]
pub struct StudyEntry {
    pub id: String,
    pub partition: String,
    pub n_reflective_panels: u8,
    pub mic_position: u8,
    pub signal: Signal,
}

/// Grouping metadata kept per id in a study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryInfo {
    pub partition: String,
    pub n_reflective_panels: u8,
    pub mic_position: u8,
}

/// A metric evaluation that failed, kept out of aggregation.
#[derive(Debug, Clone)]
pub struct PairFailure {
    pub ref_id: String,
    pub analyzed_id: String,
    pub message: String,
}

/// Every ordered pair of a sampled subset evaluated under one metric.
#[derive(Debug, Clone)]
pub struct PairwiseStudy {
    pub metric: MetricKind,
    pub config_digest: String,
    pub seed: u64,
    /// Whether `results` carry standardized values.
    pub standardized: bool,
    /// Sorted by `(ref_id, analyzed_id)`.
    pub results: Vec<MetricResult>,
    pub failures: Vec<PairFailure>,
    pub index: BTreeMap<String, EntryInfo>,
}

/// Computes `metric` over every ordered pair of `entries`, including
/// self-pairs, after per-entry preprocessing. Pair evaluations run in
/// parallel; results are sorted afterwards, so the outcome is independent
/// of scheduling.
pub fn pairwise_matrix(
    entries: &[StudyEntry],
    metric: MetricKind,
    cfg: &MetricConfig,
    pre: &PreprocessConfig,
    seed: u64,
) -> Result<PairwiseStudy> {
    if entries.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "pairwise study needs at least 2 entries, got {}",
            entries.len()
        )));
    }
    let mut index = BTreeMap::new();
    for entry in entries {
        let info = EntryInfo {
            partition: entry.partition.clone(),
            n_reflective_panels: entry.n_reflective_panels,
            mic_position: entry.mic_position,
        };
        if index.insert(entry.id.clone(), info).is_some() {
            return Err(Error::InvalidArgument(format!(
                "duplicate study id {:?}",
                entry.id
            )));
        }
    }

    let trimmed: Vec<Signal> = entries
        .par_iter()
        .map(|entry| {
            preprocess_signal(&entry.signal, pre).map_err(|e| {
                Error::InvalidArgument(format!("preprocessing {:?} failed: {e}", entry.id))
            })
        })
        .collect::<Result<_>>()?;

    let n = entries.len();
    let digest = cfg.digest(metric);
    let outcomes: Vec<(usize, usize, std::result::Result<f64, String>)> = (0..n * n)
        .into_par_iter()
        .map(|flat| {
            let (i, j) = (flat / n, flat % n);
            let value = align_pair(&trimmed[i], &trimmed[j])
                .and_then(|(a, b)| cfg.compute(metric, &a, &b))
                .map_err(|e| e.to_string());
            (i, j, value)
        })
        .collect();

    let mut results = Vec::with_capacity(n * n);
    let mut failures = Vec::new();
    for (i, j, outcome) in outcomes {
        match outcome {
            Ok(value) => results.push(MetricResult {
                metric,
                ref_id: entries[i].id.clone(),
                analyzed_id: entries[j].id.clone(),
                value,
                config_digest: digest.clone(),
            }),
            Err(message) => failures.push(PairFailure {
                ref_id: entries[i].id.clone(),
                analyzed_id: entries[j].id.clone(),
                message,
            }),
        }
    }
    if !failures.is_empty() {
        log::warn!(
            "{} of {} pairs failed under {metric} and were excluded",
            failures.len(),
            n * n
        );
    }
    results.sort_by(|a, b| {
        (a.ref_id.as_str(), a.analyzed_id.as_str()).cmp(&(b.ref_id.as_str(), b.analyzed_id.as_str()))
    });
    Ok(PairwiseStudy {
        metric,
        config_digest: digest,
        seed,
        standardized: false,
        results,
        failures,
        index,
    })
}

/// Rescales values to zero mean and unit population standard deviation.
pub fn standardize(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::DegenerateDistribution(format!(
            "need at least 2 values to standardize, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = variance.sqrt();
    if !(std > mean.abs() * 1e-12 + f64::MIN_POSITIVE) {
        return Err(Error::DegenerateDistribution(
            "zero variance: all values are equal".into(),
        ));
    }
    Ok(values.iter().map(|v| (v - mean) / std).collect())
}

/// Standardizes a study's values across all of its pairs.
pub fn standardize_study(study: &PairwiseStudy) -> Result<PairwiseStudy> {
    let values: Vec<f64> = study.results.iter().map(|r| r.value).collect();
    let standardized = standardize(&values)?;
    let mut out = study.clone();
    for (result, value) in out.results.iter_mut().zip(standardized) {
        result.value = value;
    }
    out.standardized = true;
    Ok(out)
}
