//! Energy decay convergence: per-band distance between normalized
//! decibel decay curves, averaged over a third-octave band set.

use crate::dsp::bands::{band_split, BandSet};
use crate::dsp::edc::{edc_to_db_normalized, schroeder_edc};
use crate::error::{Error, Result};
use crate::signal::{check_pair, Signal};

/// Mean over bands of `sum_t (e_db - e_hat_db)^2 / sum_t e_db^2`, where both
/// curves are normalized to 0 dB before differencing. Bands above Nyquist
/// are dropped; bands where either signal has no energy, or where the
/// reference curve is identically 0 dB, are skipped with a warning.
pub fn edc_loss(h: &Signal, h_hat: &Signal, bands: &BandSet, floor_db: f64) -> Result<f64> {
    check_pair(h, h_hat)?;
    let usable = bands.below_nyquist(h.sample_rate());
    if usable.is_empty() {
        return Err(Error::DegenerateSignal(
            "no band fits below the Nyquist frequency".into(),
        ));
    }
    let ref_bands = band_split(h, &usable)?;
    let hat_bands = band_split(h_hat, &usable)?;

    let mut total = 0.0;
    let mut used = 0usize;
    for ((ref_band, hat_band), &center) in
        ref_bands.iter().zip(&hat_bands).zip(usable.centers())
    {
        let ref_db = match edc_to_db_normalized(&schroeder_edc(ref_band), floor_db) {
            Ok(db) => db,
            Err(_) => {
                log::warn!("skipping band {center} Hz: reference has no energy");
                continue;
            }
        };
        let denom: f64 = ref_db.iter().map(|d| d * d).sum();
        if denom == 0.0 {
            log::warn!("skipping band {center} Hz: reference curve is identically 0 dB");
            continue;
        }
        let hat_db = match edc_to_db_normalized(&schroeder_edc(hat_band), floor_db) {
            Ok(db) => db,
            Err(_) => {
                log::warn!("skipping band {center} Hz: analyzed signal has no energy");
                continue;
            }
        };
        let num: f64 = ref_db
            .iter()
            .zip(&hat_db)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        total += num / denom;
        used += 1;
    }
    if used == 0 {
        return Err(Error::DegenerateSignal(
            "every band was skipped as degenerate".into(),
        ));
    }
    Ok(total / used as f64)
}
