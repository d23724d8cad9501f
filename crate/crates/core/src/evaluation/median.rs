//! Median aggregation of pairwise results into group-by-group matrices.

use std::collections::BTreeMap;

use super::PairwiseStudy;
use crate::error::{Error, Result};
use crate::metrics::MetricKind;

/// Which metadata field defines the matrix rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKey {
    Partition,
    MicPosition,
}

impl GroupKey {
    pub fn name(self) -> &'static str {
        match self {
            GroupKey::Partition => "partition",
            GroupKey::MicPosition => "mic_position",
        }
    }
}

/// Inclusive panel-count filter applied to both ends of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PanelRange {
    pub min: u8,
    pub max: u8,
}

impl PanelRange {
    pub fn contains(&self, panels: u8) -> bool {
        panels >= self.min && panels <= self.max
    }
}

/// Medians of pairwise values, rows indexed by the reference group and
/// columns by the analyzed group. Cells with no contributing pair are
/// missing, never zero.
#[derive(Debug, Clone)]
pub struct MedianMatrix {
    pub metric: MetricKind,
    pub group_key: &'static str,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
    pub counts: Vec<Vec<usize>>,
}

impl MedianMatrix {
    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        self.values[row][col]
    }

    /// Smallest and largest medians over the present cells.
    pub fn value_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for v in self.values.iter().flatten().flatten() {
            range = Some(match range {
                None => (*v, *v),
                Some((lo, hi)) => (lo.min(*v), hi.max(*v)),
            });
        }
        range
    }
}

/// Median with the even-count convention: mean of the two central values.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

/// Aggregates a study into a median matrix over `key`, optionally keeping
/// only pairs whose two entries both fall in `filter`, and optionally
/// dropping self-pairs.
pub fn median_by_group(
    study: &PairwiseStudy,
    key: GroupKey,
    filter: Option<PanelRange>,
    include_self_pairs: bool,
) -> Result<MedianMatrix> {
    let label_of = |id: &str| -> Result<String> {
        let info = study.index.get(id).ok_or_else(|| {
            Error::InvalidArgument(format!("result references unknown id {id:?}"))
        })?;
        Ok(match key {
            GroupKey::Partition => info.partition.clone(),
            GroupKey::MicPosition => info.mic_position.to_string(),
        })
    };

    let mut cells: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    let mut labels: Vec<String> = Vec::new();
    for result in &study.results {
        if !include_self_pairs && result.ref_id == result.analyzed_id {
            continue;
        }
        if let Some(range) = filter {
            let ref_info = &study.index[&result.ref_id];
            let hat_info = &study.index[&result.analyzed_id];
            if !range.contains(ref_info.n_reflective_panels)
                || !range.contains(hat_info.n_reflective_panels)
            {
                continue;
            }
        }
        let row = label_of(&result.ref_id)?;
        let col = label_of(&result.analyzed_id)?;
        for label in [&row, &col] {
            if !labels.contains(label) {
                labels.push(label.clone());
            }
        }
        cells.entry((row, col)).or_default().push(result.value);
    }
    if cells.is_empty() {
        return Err(Error::InsufficientData(
            "no pair survives the filter".into(),
        ));
    }
    labels.sort_by_key(|l| label_sort_key(l));

    let dim = labels.len();
    let mut values = vec![vec![None; dim]; dim];
    let mut counts = vec![vec![0usize; dim]; dim];
    for ((row, col), mut cell) in cells {
        let r = labels.iter().position(|l| *l == row).unwrap();
        let c = labels.iter().position(|l| *l == col).unwrap();
        counts[r][c] = cell.len();
        values[r][c] = median(&mut cell);
    }
    Ok(MedianMatrix {
        metric: study.metric,
        group_key: key.name(),
        row_labels: labels.clone(),
        col_labels: labels,
        values,
        counts,
    })
}

/// Orders labels like `0-4`, `5-9`, `50-55` numerically, with a lexical
/// fallback.
fn label_sort_key(label: &str) -> (i64, String) {
    let digits: String = label.chars().take_while(|c| c.is_ascii_digit()).collect();
    (digits.parse().unwrap_or(i64::MAX), label.to_string())
}
