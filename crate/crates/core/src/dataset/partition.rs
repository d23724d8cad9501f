//! Partitioning by reflective-panel count and seeded subset sampling.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::manifest::{RirEntry, MAX_PANELS};
use crate::digest::derive_seed;
use crate::error::{Error, Result};

/// Inclusive panel-count ranges that jointly cover `0..=55` without
/// overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanelBins {
    ranges: Vec<(u8, u8)>,
}

impl PanelBins {
    pub fn new(ranges: Vec<(u8, u8)>) -> Result<Self> {
        if ranges.is_empty() {
            return Err(Error::InvalidArgument("no panel bins given".into()));
        }
        let mut next = 0u16;
        for &(lo, hi) in &ranges {
            if lo > hi || hi > MAX_PANELS {
                return Err(Error::InvalidArgument(format!(
                    "bad bin {lo}-{hi}: bins are lo<=hi within 0..={MAX_PANELS}"
                )));
            }
            if (lo as u16) < next {
                return Err(Error::InvalidArgument(format!(
                    "bin {lo}-{hi} overlaps or is out of order"
                )));
            }
            if lo as u16 != next {
                return Err(Error::InvalidArgument(format!(
                    "gap before bin {lo}-{hi}: panel counts {next}..{lo} uncovered"
                )));
            }
            next = hi as u16 + 1;
        }
        if next != MAX_PANELS as u16 + 1 {
            return Err(Error::InvalidArgument(format!(
                "bins stop at {}; they must cover 0..={MAX_PANELS}",
                next - 1
            )));
        }
        Ok(Self { ranges })
    }

    /// Eleven bins of width five, with the last widened to `50-55`.
    pub fn default_bins() -> Self {
        let mut ranges: Vec<(u8, u8)> = (0..10).map(|i| (5 * i, 5 * i + 4)).collect();
        ranges.push((50, 55));
        Self { ranges }
    }

    pub fn ranges(&self) -> &[(u8, u8)] {
        &self.ranges
    }

    pub fn label_for(&self, panels: u8) -> String {
        let (lo, hi) = self
            .ranges
            .iter()
            .copied()
            .find(|&(lo, hi)| panels >= lo && panels <= hi)
            .expect("bins cover the full panel range");
        format!("{lo}-{hi}")
    }
}

/// A labeled, non-empty group of manifest entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub label: String,
    pub entries: Vec<RirEntry>,
}

/// Assigns every entry to exactly one bin; empty bins produce no partition.
pub fn partition_by_panels(entries: &[RirEntry], bins: &PanelBins) -> Vec<Partition> {
    let mut grouped: BTreeMap<usize, Vec<RirEntry>> = BTreeMap::new();
    for entry in entries {
        let idx = bins
            .ranges
            .iter()
            .position(|&(lo, hi)| entry.n_reflective_panels >= lo && entry.n_reflective_panels <= hi)
            .expect("bins cover the full panel range");
        grouped.entry(idx).or_default().push(entry.clone());
    }
    grouped
        .into_iter()
        .map(|(idx, entries)| {
            let (lo, hi) = bins.ranges[idx];
            Partition {
                label: format!("{lo}-{hi}"),
                entries,
            }
        })
        .collect()
}

/// Draws `per_mic` entries per microphone position present in the
/// partition, without replacement, from a PRNG derived from `seed`,
/// the partition label, and the microphone position.
pub fn sample_subset(partition: &Partition, per_mic: usize, seed: u64) -> Result<Vec<RirEntry>> {
    let mut by_mic: BTreeMap<u8, Vec<&RirEntry>> = BTreeMap::new();
    for entry in &partition.entries {
        by_mic.entry(entry.mic_position).or_default().push(entry);
    }
    let mut selected = Vec::new();
    for (mic, entries) in by_mic {
        if entries.len() < per_mic {
            return Err(Error::InsufficientData(format!(
                "partition {:?}, mic {mic}: {} entries, need {per_mic}",
                partition.label,
                entries.len()
            )));
        }
        if per_mic == 0 {
            continue;
        }
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("subset:{}:{mic}", partition.label)));
        let mut picks = rand::seq::index::sample(&mut rng, entries.len(), per_mic).into_vec();
        picks.sort_unstable();
        selected.extend(picks.into_iter().map(|i| entries[i].clone()));
    }
    Ok(selected)
}
