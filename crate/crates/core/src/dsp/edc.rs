//! Energy decay curves via Schroeder backward integration.

use ndarray::Array2;

use super::bands::{band_split, BandSet};
use crate::error::{Error, Result};
use crate::signal::Signal;

/// Default clamp applied to normalized decibel decay curves.
pub const DEFAULT_FLOOR_DB: f64 = -120.0;

/// Backward-integrated squared signal: `edc[t] = sum_{tau >= t} x[tau]^2`.
pub fn schroeder_edc(signal: &Signal) -> Vec<f64> {
    let samples = signal.samples();
    let mut edc = vec![0.0; samples.len()];
    let mut acc = 0.0;
    for (t, &s) in samples.iter().enumerate().rev() {
        acc += s * s;
        edc[t] = acc;
    }
    edc
}

/// Normalizes a decay curve to 0 dB at its start and converts to decibels,
/// clamping at `floor_db`.
pub fn edc_to_db_normalized(edc: &[f64], floor_db: f64) -> Result<Vec<f64>> {
    let total = match edc.first() {
        Some(&e) if e > 0.0 => e,
        _ => {
            return Err(Error::DegenerateSignal(
                "decay curve has zero total energy".into(),
            ))
        }
    };
    Ok(edc
        .iter()
        .map(|&e| {
            let ratio = e / total;
            if ratio > 0.0 {
                (10.0 * ratio.log10()).max(floor_db)
            } else {
                floor_db
            }
        })
        .collect())
}

/// Per-band normalized decay curves in decibels.
#[derive(Debug, Clone)]
pub struct EdcCurves {
    /// Shape `(band, time)`, each row starting at exactly 0 dB.
    pub curves: Array2<f64>,
    /// Center frequency of each retained band, aligned with the rows.
    pub centers: Vec<f64>,
    pub normalized: bool,
}

/// Computes normalized per-band decay curves over `bands`. Bands above the
/// Nyquist frequency are rejected by the band filter; bands where the signal
/// has no energy are skipped with a warning.
pub fn edc_curves(signal: &Signal, bands: &BandSet, floor_db: f64) -> Result<EdcCurves> {
    let usable = bands.below_nyquist(signal.sample_rate());
    if usable.is_empty() {
        return Err(Error::DegenerateSignal(
            "no band fits below the Nyquist frequency".into(),
        ));
    }
    let split = band_split(signal, &usable)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut centers = Vec::new();
    for (band, &center) in split.iter().zip(usable.centers()) {
        match edc_to_db_normalized(&schroeder_edc(band), floor_db) {
            Ok(db) => {
                rows.push(db);
                centers.push(center);
            }
            Err(_) => log::warn!("skipping zero-energy band at {center} Hz"),
        }
    }
    if rows.is_empty() {
        return Err(Error::DegenerateSignal(
            "signal has no energy in any band".into(),
        ));
    }
    let time = rows[0].len();
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    let curves = Array2::from_shape_vec((centers.len(), time), flat).expect("row-major curves");
    Ok(EdcCurves {
        curves,
        centers,
        normalized: true,
    })
}
