//! One-third octave band set and zero-phase brickwall band filtering.
//!
//! Band edges are placed a factor 2^(1/6) either side of the exact base-2
//! midband frequency nearest the nominal center (1000 * 2^(k/3) for integer
//! k). Snapping to the exact grid makes adjacent bands tile the spectrum
//! with no gaps or overlaps, which nominal centers like 31.5 Hz or 1250 Hz
//! would not.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fft;
use crate::error::{Error, Result};
use crate::signal::Signal;

/// Nominal one-third octave center frequencies, 20 Hz to 12.5 kHz.
pub const THIRD_OCTAVE_CENTERS: [f64; 29] = [
    20.0, 25.0, 31.5, 40.0, 50.0, 63.0, 80.0, 100.0, 125.0, 160.0, 200.0, 250.0, 315.0, 400.0,
    500.0, 630.0, 800.0, 1000.0, 1250.0, 1600.0, 2000.0, 2500.0, 3150.0, 4000.0, 5000.0, 6300.0,
    8000.0, 10000.0, 12500.0,
];

/// An ordered set of band center frequencies with a shared edge factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSet {
    centers: Vec<f64>,
    edge_factor: f64,
}

impl BandSet {
    /// Builds a band set from strictly increasing positive centers.
    pub fn new(centers: Vec<f64>) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::InvalidArgument("band set must be non-empty".into()));
        }
        if centers.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "band centers must be positive and finite".into(),
            ));
        }
        if centers.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "band centers must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            centers,
            edge_factor: EDGE_FACTOR,
        })
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn edge_factor(&self) -> f64 {
        self.edge_factor
    }

    /// Bands of this set usable at `sample_rate`, preserving order. Bands
    /// whose upper edge exceeds the Nyquist frequency are dropped with a
    /// warning.
    pub fn below_nyquist(&self, sample_rate: u32) -> BandSet {
        let nyquist = sample_rate as f64 / 2.0;
        let kept: Vec<f64> = self
            .centers
            .iter()
            .copied()
            .filter(|&c| band_edges(c).1 <= nyquist)
            .collect();
        if kept.len() < self.centers.len() {
            log::warn!(
                "dropping {} band(s) above Nyquist {nyquist} Hz",
                self.centers.len() - kept.len()
            );
        }
        BandSet {
            centers: kept,
            edge_factor: self.edge_factor,
        }
    }
}

const EDGE_FACTOR: f64 = 1.122_462_048_309_373; // 2^(1/6)

/// The standard 29-band one-third octave set.
pub fn third_octave_centers() -> BandSet {
    BandSet {
        centers: THIRD_OCTAVE_CENTERS.to_vec(),
        edge_factor: EDGE_FACTOR,
    }
}

/// Exact base-2 midband frequency nearest a nominal center.
pub fn exact_midband(center: f64) -> f64 {
    let k = (3.0 * (center / 1000.0).log2()).round();
    1000.0 * (k / 3.0).exp2()
}

/// Lower and upper brickwall edges for a nominal center frequency.
pub fn band_edges(center: f64) -> (f64, f64) {
    let mid = exact_midband(center);
    (mid / EDGE_FACTOR, mid * EDGE_FACTOR)
}

/// Zero-phase brickwall bandpass: FFT, zero all bins outside
/// `[lower_edge, upper_edge)`, inverse FFT. Output length equals input
/// length.
pub fn bandpass(signal: &Signal, center: f64) -> Result<Signal> {
    let nyquist = signal.sample_rate() as f64 / 2.0;
    let (lo, hi) = band_edges(center);
    if hi > nyquist {
        return Err(Error::BandOutOfRange {
            center,
            upper_edge: hi,
            nyquist,
        });
    }
    let spectrum = fft::fft_real(signal.samples());
    let masked = apply_band_mask(&spectrum, signal.sample_rate(), lo, hi);
    Ok(Signal::from_trusted(
        fft::ifft_to_real(masked),
        signal.sample_rate(),
    ))
}

/// Splits a signal into one bandpassed signal per band, sharing a single
/// forward FFT. Result order matches `bands.centers()`.
pub fn band_split(signal: &Signal, bands: &BandSet) -> Result<Vec<Signal>> {
    let nyquist = signal.sample_rate() as f64 / 2.0;
    for &c in bands.centers() {
        let (_, hi) = band_edges(c);
        if hi > nyquist {
            return Err(Error::BandOutOfRange {
                center: c,
                upper_edge: hi,
                nyquist,
            });
        }
    }
    let spectrum = fft::fft_real(signal.samples());
    bands
        .centers()
        .iter()
        .map(|&c| {
            let (lo, hi) = band_edges(c);
            let masked = apply_band_mask(&spectrum, signal.sample_rate(), lo, hi);
            Ok(Signal::from_trusted(
                fft::ifft_to_real(masked),
                signal.sample_rate(),
            ))
        })
        .collect()
}

/// Keeps bins whose absolute frequency lies in `[lo, hi)`, zeroing the rest.
/// Positive and negative frequencies are masked together, preserving
/// conjugate symmetry.
fn apply_band_mask(spectrum: &[Complex64], sample_rate: u32, lo: f64, hi: f64) -> Vec<Complex64> {
    let n = spectrum.len();
    let df = sample_rate as f64 / n as f64;
    spectrum
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let freq = if k <= n / 2 {
                k as f64 * df
            } else {
                (n - k) as f64 * df
            };
            if freq >= lo && freq < hi {
                v
            } else {
                Complex64::default()
            }
        })
        .collect()
}
