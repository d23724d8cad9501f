//! Gradual-difference sweep: distance from one target to sampled responses
//! at every panel count, at a fixed microphone position.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::StudyEntry;
use crate::digest::derive_seed;
use crate::error::{Error, Result};
use crate::metrics::{MetricConfig, MetricKind};
use crate::preprocess::{align_pair, preprocess_signal, PreprocessConfig};
use crate::signal::Signal;

/// Median and spread of metric values against the target, per signed
/// panel-count difference.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub metric: MetricKind,
    /// Panel count minus the target's panel count, ascending.
    pub delta: Vec<i32>,
    pub median: Vec<f64>,
    /// Population standard deviation per delta.
    pub std: Vec<f64>,
    /// Number of sampled responses per delta.
    pub n: Vec<usize>,
    pub normalized: bool,
}

/// Runs the sweep: for every panel count in the pool (restricted to the
/// target's microphone position), samples up to `n_per_group` responses
/// with a seed-derived PRNG and evaluates `metric` against the target.
pub fn sweep_experiment(
    target_id: &str,
    pool: &[StudyEntry],
    n_per_group: usize,
    metric: MetricKind,
    cfg: &MetricConfig,
    pre: &PreprocessConfig,
    seed: u64,
) -> Result<SweepCurve> {
    if n_per_group == 0 {
        return Err(Error::InvalidArgument("n_per_group must be >= 1".into()));
    }
    let target = pool
        .iter()
        .find(|e| e.id == target_id)
        .ok_or_else(|| Error::InvalidArgument(format!("target {target_id:?} not in pool")))?;

    let candidates: Vec<&StudyEntry> = pool
        .iter()
        .filter(|e| e.mic_position == target.mic_position)
        .collect();

    let mut by_panels: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, entry) in candidates.iter().enumerate() {
        by_panels.entry(entry.n_reflective_panels).or_default().push(i);
    }

    let target_trimmed = preprocess_signal(&target.signal, pre)
        .map_err(|e| Error::InvalidArgument(format!("preprocessing target failed: {e}")))?;

    let mut delta = Vec::new();
    let mut medians = Vec::new();
    let mut stds = Vec::new();
    let mut ns = Vec::new();
    for (&panels, indices) in &by_panels {
        let take = n_per_group.min(indices.len());
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("sweep:{panels}")));
        let mut picks = rand::seq::index::sample(&mut rng, indices.len(), take).into_vec();
        picks.sort_unstable();

        let mut values: Vec<f64> = picks
            .par_iter()
            .map(|&p| {
                let entry = candidates[indices[p]];
                let trimmed = preprocess_signal(&entry.signal, pre).map_err(|e| {
                    Error::InvalidArgument(format!("preprocessing {:?} failed: {e}", entry.id))
                })?;
                compute_against(&target_trimmed, &trimmed, metric, cfg)
            })
            .collect::<Result<_>>()?;

        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt();
        values.sort_unstable_by(f64::total_cmp);
        let median = if values.len() % 2 == 1 {
            values[values.len() / 2]
        } else {
            (values[values.len() / 2 - 1] + values[values.len() / 2]) / 2.0
        };

        delta.push(panels as i32 - target.n_reflective_panels as i32);
        medians.push(median);
        stds.push(std);
        ns.push(values.len());
    }
    Ok(SweepCurve {
        metric,
        delta,
        median: medians,
        std: stds,
        n: ns,
        normalized: false,
    })
}

fn compute_against(
    target: &Signal,
    candidate: &Signal,
    metric: MetricKind,
    cfg: &MetricConfig,
) -> Result<f64> {
    let (a, b) = align_pair(target, candidate)?;
    cfg.compute(metric, &a, &b)
}

/// Maps the medians onto `[0, 1]` and scales the standard deviations by the
/// same factor.
pub fn normalize_min_max(curve: &SweepCurve) -> Result<SweepCurve> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &m in &curve.median {
        lo = lo.min(m);
        hi = hi.max(m);
    }
    if !(hi > lo) {
        return Err(Error::DegenerateDistribution(
            "median curve is flat; cannot normalize".into(),
        ));
    }
    let scale = hi - lo;
    Ok(SweepCurve {
        metric: curve.metric,
        delta: curve.delta.clone(),
        median: curve.median.iter().map(|m| (m - lo) / scale).collect(),
        std: curve.std.iter().map(|s| s / scale).collect(),
        n: curve.n.clone(),
        normalized: true,
    })
}
