//! Multi-scale spectral loss: spectral convergence plus log-magnitude
//! distance, averaged over several STFT resolutions.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::dsp::{magnitude_spectrogram, stft_with_fft};
use crate::error::{Error, Result};
use crate::signal::{check_pair, Signal};

/// One STFT resolution: FFT size, hop, and analysis window length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub fft_size: usize,
    pub hop: usize,
    pub window_length: usize,
}

/// Parameters of the multi-scale spectral loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MssConfig {
    pub resolutions: Vec<Resolution>,
    /// Guard added inside the logarithm of the magnitude term.
    pub log_epsilon: f64,
}

impl Default for MssConfig {
    fn default() -> Self {
        Self {
            resolutions: vec![
                Resolution {
                    fft_size: 512,
                    hop: 128,
                    window_length: 512,
                },
                Resolution {
                    fft_size: 1024,
                    hop: 256,
                    window_length: 1024,
                },
                Resolution {
                    fft_size: 2048,
                    hop: 512,
                    window_length: 2048,
                },
            ],
            log_epsilon: 1e-8,
        }
    }
}

impl MssConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resolutions.is_empty() {
            return Err(Error::InvalidArgument(
                "mss config needs at least one resolution".into(),
            ));
        }
        for r in &self.resolutions {
            if r.hop == 0 || r.window_length == 0 {
                return Err(Error::InvalidArgument(
                    "mss resolution fields must be positive".into(),
                ));
            }
            if r.window_length > r.fft_size {
                return Err(Error::InvalidArgument(format!(
                    "mss window {} exceeds fft size {}",
                    r.window_length, r.fft_size
                )));
            }
        }
        if !(self.log_epsilon > 0.0) {
            return Err(Error::InvalidArgument("mss log epsilon must be > 0".into()));
        }
        Ok(())
    }

    pub fn canonical(&self) -> String {
        let res: Vec<String> = self
            .resolutions
            .iter()
            .map(|r| format!("{}/{}/{}", r.fft_size, r.hop, r.window_length))
            .collect();
        format!("mss:res=[{}],eps={}", res.join(";"), self.log_epsilon)
    }
}

/// `||H - H_hat||_F / ||H||_F` on magnitude spectrograms.
pub fn spectral_convergence(h_mag: &Array2<f64>, h_hat_mag: &Array2<f64>) -> Result<f64> {
    if h_mag.dim() != h_hat_mag.dim() {
        return Err(Error::PairMismatch(format!(
            "magnitude shapes differ: {:?} vs {:?}",
            h_mag.dim(),
            h_hat_mag.dim()
        )));
    }
    let denom: f64 = h_mag.iter().map(|v| v * v).sum::<f64>().sqrt();
    if denom == 0.0 {
        return Err(Error::DegenerateSignal(
            "reference magnitude spectrogram is all zero".into(),
        ));
    }
    let num: f64 = h_mag
        .iter()
        .zip(h_hat_mag.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(num / denom)
}

/// `(1/N) * ||ln(H + eps) - ln(H_hat + eps)||_1` on magnitude spectrograms,
/// with `N` the number of STFT frames.
pub fn log_magnitude_loss(
    h_mag: &Array2<f64>,
    h_hat_mag: &Array2<f64>,
    n_frames: usize,
    log_epsilon: f64,
) -> Result<f64> {
    if h_mag.dim() != h_hat_mag.dim() {
        return Err(Error::PairMismatch(format!(
            "magnitude shapes differ: {:?} vs {:?}",
            h_mag.dim(),
            h_hat_mag.dim()
        )));
    }
    if n_frames == 0 {
        return Err(Error::InvalidArgument("n_frames must be >= 1".into()));
    }
    let l1: f64 = h_mag
        .iter()
        .zip(h_hat_mag.iter())
        .map(|(a, b)| ((a + log_epsilon).ln() - (b + log_epsilon).ln()).abs())
        .sum();
    Ok(l1 / n_frames as f64)
}

/// Mean over resolutions of spectral convergence plus log-magnitude loss.
pub fn mss_loss(h: &Signal, h_hat: &Signal, cfg: &MssConfig) -> Result<f64> {
    cfg.validate()?;
    check_pair(h, h_hat)?;
    let mut total = 0.0;
    for r in &cfg.resolutions {
        let spec = stft_with_fft(h, r.window_length, r.hop, r.fft_size)?;
        let spec_hat = stft_with_fft(h_hat, r.window_length, r.hop, r.fft_size)?;
        let mag = magnitude_spectrogram(&spec);
        let mag_hat = magnitude_spectrogram(&spec_hat);
        total += spectral_convergence(&mag, &mag_hat)?
            + log_magnitude_loss(&mag, &mag_hat, spec.n_frames, cfg.log_epsilon)?;
    }
    Ok(total / cfg.resolutions.len() as f64)
}
