//! Time-domain signal container.

use crate::error::{Error, Result};

/// A single-channel signal: amplitude samples plus the rate they were taken at.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl Signal {
    /// Builds a signal, validating that it is non-empty, finite, and has a
    /// positive sample rate.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidArgument("sample rate must be positive".into()));
        }
        if samples.is_empty() {
            return Err(Error::InvalidArgument(
                "signal must contain at least one sample".into(),
            ));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite sample at index {i}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    /// Builds a signal from samples already known to be finite and non-empty.
    pub(crate) fn from_trusted(samples: Vec<f64>, sample_rate: u32) -> Self {
        debug_assert!(!samples.is_empty());
        Self {
            samples,
            sample_rate,
        }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum()
    }

    /// Copy of the samples scaled by `gain`.
    pub fn scaled(&self, gain: f64) -> Signal {
        Signal::from_trusted(
            self.samples.iter().map(|s| s * gain).collect(),
            self.sample_rate,
        )
    }

    /// First `len` samples as a new signal.
    pub fn truncated(&self, len: usize) -> Result<Signal> {
        if len == 0 || len > self.samples.len() {
            return Err(Error::InvalidArgument(format!(
                "truncation length {len} out of range 1..={}",
                self.samples.len()
            )));
        }
        Ok(Signal::from_trusted(
            self.samples[..len].to_vec(),
            self.sample_rate,
        ))
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Checks that two signals are comparable: equal lengths and sample rates.
pub fn check_pair(a: &Signal, b: &Signal) -> Result<()> {
    if a.sample_rate() != b.sample_rate() {
        return Err(Error::PairMismatch(format!(
            "sample rates differ: {} vs {}",
            a.sample_rate(),
            b.sample_rate()
        )));
    }
    if a.len() != b.len() {
        return Err(Error::PairMismatch(format!(
            "lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}
