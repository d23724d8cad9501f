//! CSV serialization of study results, median matrices, and sweep curves.

use std::io;

use super::median::MedianMatrix;
use super::sweep::SweepCurve;
use super::PairwiseStudy;
use crate::error::{Error, Result};
use crate::metrics::MetricKind;

/// One row of a results file; `value_std` is present in standardized files.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub metric: MetricKind,
    pub ref_id: String,
    pub analyzed_id: String,
    pub value: f64,
    pub value_std: Option<f64>,
}

/// Writes `metric,ref_id,analyzed_id,value` rows for the given studies.
pub fn write_raw_results_csv<W: io::Write>(writer: W, studies: &[&PairwiseStudy]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["metric", "ref_id", "analyzed_id", "value"])?;
    for study in studies {
        for r in &study.results {
            w.write_record([
                r.metric.name(),
                &r.ref_id,
                &r.analyzed_id,
                &r.value.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("results csv", e))?;
    Ok(())
}

/// Writes `metric,ref_id,analyzed_id,value,value_std` rows by pairing each
/// raw study with its standardized counterpart.
pub fn write_std_results_csv<W: io::Write>(
    writer: W,
    pairs: &[(&PairwiseStudy, &PairwiseStudy)],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["metric", "ref_id", "analyzed_id", "value", "value_std"])?;
    for (raw, std) in pairs {
        if raw.results.len() != std.results.len() {
            return Err(Error::InvalidArgument(
                "raw and standardized studies differ in size".into(),
            ));
        }
        for (r, s) in raw.results.iter().zip(&std.results) {
            w.write_record([
                r.metric.name(),
                &r.ref_id,
                &r.analyzed_id,
                &r.value.to_string(),
                &s.value.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("results csv", e))?;
    Ok(())
}

/// Reads a results file, accepting both the raw and standardized layouts.
pub fn read_results_csv<R: io::Read>(reader: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let headers = r.headers()?.clone();
    let expect_std = match headers.len() {
        4 => false,
        5 if headers.get(4) == Some("value_std") => true,
        _ => {
            return Err(Error::ManifestFormat {
                line: 1,
                message: "expected header metric,ref_id,analyzed_id,value[,value_std]".into(),
            })
        }
    };
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let parse_f64 = |i: usize| -> Result<f64> {
            record
                .get(i)
                .unwrap_or("")
                .parse()
                .map_err(|_| Error::ManifestFormat {
                    line,
                    message: format!("cannot parse {:?} as a number", record.get(i).unwrap_or("")),
                })
        };
        rows.push(ResultRow {
            metric: record.get(0).unwrap_or("").parse().map_err(|_| {
                Error::ManifestFormat {
                    line,
                    message: format!("unknown metric {:?}", record.get(0).unwrap_or("")),
                }
            })?,
            ref_id: record.get(1).unwrap_or("").to_string(),
            analyzed_id: record.get(2).unwrap_or("").to_string(),
            value: parse_f64(3)?,
            value_std: if expect_std { Some(parse_f64(4)?) } else { None },
        });
    }
    Ok(rows)
}

/// Writes a median matrix: header row of group labels, one row per
/// reference group, missing cells as empty fields.
pub fn write_median_matrix_csv<W: io::Write>(writer: W, matrix: &MedianMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec![matrix.group_key.to_string()];
    header.extend(matrix.col_labels.iter().cloned());
    w.write_record(&header)?;
    for (row_label, row) in matrix.row_labels.iter().zip(&matrix.values) {
        let mut record = vec![row_label.clone()];
        record.extend(
            row.iter()
                .map(|cell| cell.map(|v| v.to_string()).unwrap_or_default()),
        );
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| Error::io("median matrix csv", e))?;
    Ok(())
}

/// Writes a sweep curve as `delta,median,std,n`.
pub fn write_sweep_csv<W: io::Write>(writer: W, curve: &SweepCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["delta", "median", "std", "n"])?;
    for i in 0..curve.delta.len() {
        w.write_record([
            curve.delta[i].to_string(),
            curve.median[i].to_string(),
            curve.std[i].to_string(),
            curve.n[i].to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("sweep csv", e))?;
    Ok(())
}
