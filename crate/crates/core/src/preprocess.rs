//! Conversion of raw impulse responses into late-reverberation-only
//! segments: onset detection, mixing-time truncation, pair alignment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Framing parameters for onset detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OnsetConfig {
    pub frame_length: usize,
    pub hop: usize,
}

impl Default for OnsetConfig {
    fn default() -> Self {
        Self {
            frame_length: 256,
            hop: 64,
        }
    }
}

impl OnsetConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hop == 0 {
            return Err(Error::InvalidArgument("onset hop must be >= 1".into()));
        }
        if self.frame_length < 2 * self.hop {
            return Err(Error::InvalidArgument(format!(
                "onset frame length {} must be at least twice the hop {}",
                self.frame_length, self.hop
            )));
        }
        Ok(())
    }
}

/// A planned truncation of a raw impulse response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrimSpec {
    pub onset_sample: usize,
    pub t_mix_ms: f64,
    pub tail_end: usize,
}

impl TrimSpec {
    /// Validates that the cut leaves a non-empty segment inside the signal.
    pub fn new(onset_sample: usize, t_mix_ms: f64, tail_end: usize, sample_rate: u32) -> Result<Self> {
        let spec = Self {
            onset_sample,
            t_mix_ms,
            tail_end,
        };
        if spec.start_sample(sample_rate) >= tail_end {
            return Err(Error::InvalidArgument(format!(
                "trim start {} is not before tail end {tail_end}",
                spec.start_sample(sample_rate)
            )));
        }
        Ok(spec)
    }

    /// First retained sample: onset plus the mixing time in samples.
    pub fn start_sample(&self, sample_rate: u32) -> usize {
        self.onset_sample + mix_samples(self.t_mix_ms, sample_rate)
    }
}

fn mix_samples(t_mix_ms: f64, sample_rate: u32) -> usize {
    (t_mix_ms * sample_rate as f64 / 1000.0).round() as usize
}

/// Finds the onset as the start of the frame with the largest energy rise.
///
/// Frame energies are compared to the previous frame, with silence assumed
/// before the signal, so a signal that opens with the direct sound reports
/// onset 0. Ties resolve to the earliest frame.
pub fn detect_onset(rir: &Signal, cfg: &OnsetConfig) -> Result<usize> {
    cfg.validate()?;
    if rir.len() < 2 * cfg.frame_length {
        return Err(Error::InvalidArgument(format!(
            "signal of {} samples is too short for onset frames of {}",
            rir.len(),
            cfg.frame_length
        )));
    }
    let samples = rir.samples();
    if samples.iter().all(|&s| s == 0.0) {
        return Err(Error::DegenerateSignal(
            "cannot locate an onset in an all-zero signal".into(),
        ));
    }
    let n_frames = (rir.len() - cfg.frame_length) / cfg.hop + 1;
    let mut best_rise = f64::NEG_INFINITY;
    let mut best_frame = 0usize;
    let mut prev_energy = 0.0;
    for k in 0..n_frames {
        let start = k * cfg.hop;
        let energy: f64 = samples[start..start + cfg.frame_length]
            .iter()
            .map(|s| s * s)
            .sum();
        let rise = energy - prev_energy;
        if rise > best_rise {
            best_rise = rise;
            best_frame = k;
        }
        prev_energy = energy;
    }
    Ok(best_frame * cfg.hop)
}

/// Drops everything before `onset + t_mix`; the output is what the metrics
/// treat as time zero onward.
pub fn trim_late_reverb(rir: &Signal, onset: usize, t_mix_ms: f64) -> Result<Signal> {
    if !(t_mix_ms >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mixing time {t_mix_ms} ms must be non-negative"
        )));
    }
    let start = onset + mix_samples(t_mix_ms, rir.sample_rate());
    if start >= rir.len() {
        return Err(Error::InvalidArgument(format!(
            "trim point {start} leaves no samples in a signal of {}",
            rir.len()
        )));
    }
    Ok(Signal::from_trusted(
        rir.samples()[start..].to_vec(),
        rir.sample_rate(),
    ))
}

/// Everything needed to turn a raw impulse response into its
/// late-reverberation segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessConfig {
    #[serde(flatten)]
    pub onset: OnsetConfig,
    /// Mixing time in milliseconds, a per-corpus constant supplied by the
    /// caller.
    pub t_mix_ms: f64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            onset: OnsetConfig::default(),
            t_mix_ms: 0.0,
        }
    }
}

/// Onset detection followed by mixing-time truncation.
pub fn preprocess_signal(rir: &Signal, cfg: &PreprocessConfig) -> Result<Signal> {
    let onset = detect_onset(rir, &cfg.onset)?;
    trim_late_reverb(rir, onset, cfg.t_mix_ms)
}

/// Truncates both signals to the shorter length. Sample rates must match;
/// resampling is out of scope.
pub fn align_pair(a: &Signal, b: &Signal) -> Result<(Signal, Signal)> {
    if a.sample_rate() != b.sample_rate() {
        return Err(Error::PairMismatch(format!(
            "sample rates differ: {} vs {}",
            a.sample_rate(),
            b.sample_rate()
        )));
    }
    let len = a.len().min(b.len());
    Ok((a.truncated(len)?, b.truncated(len)?))
}
