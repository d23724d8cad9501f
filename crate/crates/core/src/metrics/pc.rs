//! Averaged power convergence: distance between locally averaged
//! time-frequency power maps.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::dsp::{conv2d_strided, hann_kernel_2d, power_spectrogram, stft};
use crate::error::{Error, Result};
use crate::signal::{check_pair, Signal};

/// Parameters of the averaged power convergence metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PcConfig {
    pub stft_window: usize,
    pub stft_hop: usize,
    pub kernel_side: usize,
    pub stride: usize,
    /// Guard added to the elementwise product in the denominator.
    pub epsilon: f64,
}

impl Default for PcConfig {
    fn default() -> Self {
        Self {
            stft_window: 1024,
            stft_hop: 256,
            kernel_side: 64,
            stride: 4,
            epsilon: 1e-12,
        }
    }
}

impl PcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.stride == 0 || self.stft_hop == 0 || self.stft_window == 0 || self.kernel_side == 0
        {
            return Err(Error::InvalidArgument(
                "pc config fields must be positive".into(),
            ));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument("pc epsilon must be > 0".into()));
        }
        Ok(())
    }

    pub fn canonical(&self) -> String {
        format!(
            "pc:w={},h={},k={},s={},eps={}",
            self.stft_window, self.stft_hop, self.kernel_side, self.stride, self.epsilon
        )
    }
}

/// Squared-magnitude STFT smoothed by a strided 2D Hann kernel.
pub fn smoothed_power_map(signal: &Signal, cfg: &PcConfig) -> Result<Array2<f64>> {
    let spec = stft(signal, cfg.stft_window, cfg.stft_hop)?;
    let power = power_spectrogram(&spec);
    let kernel = hann_kernel_2d(cfg.kernel_side)?;
    let (h, w) = power.dim();
    if cfg.kernel_side > h || cfg.kernel_side > w {
        return Err(Error::InvalidArgument(format!(
            "signal too short: smoothed map needs a {0}x{0} kernel to fit a {h}x{w} power map",
            cfg.kernel_side
        )));
    }
    conv2d_strided(&power, &kernel, cfg.stride)
}

/// Frobenius norm of the elementwise quotient
/// `(P - P_hat) / (P * P_hat + epsilon)` of two smoothed power maps.
pub fn pc_loss(h: &Signal, h_hat: &Signal, cfg: &PcConfig) -> Result<f64> {
    cfg.validate()?;
    check_pair(h, h_hat)?;
    let p = smoothed_power_map(h, cfg)?;
    let p_hat = smoothed_power_map(h_hat, cfg)?;
    let mut sum_sq = 0.0;
    for (a, b) in p.iter().zip(p_hat.iter()) {
        let q = (a - b) / (a * b + cfg.epsilon);
        sum_sq += q * q;
    }
    Ok(sum_sq.sqrt())
}
