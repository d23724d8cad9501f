//! The four scalar similarity metrics over a (reference, analyzed) pair:
//! averaged power convergence and energy decay convergence, plus the
//! multi-scale spectral and error-to-signal-ratio baselines.

pub mod edc;
pub mod esr;
pub mod mss;
pub mod pc;

use serde::{Deserialize, Serialize};

use crate::digest::digest_str;
use crate::dsp::{third_octave_centers, BandSet, DEFAULT_FLOOR_DB};
use crate::error::{Error, Result};
use crate::signal::Signal;

pub use edc::edc_loss;
pub use esr::esr_loss;
pub use mss::{log_magnitude_loss, mss_loss, spectral_convergence, MssConfig, Resolution};
pub use pc::{pc_loss, smoothed_power_map, PcConfig};

/// Which similarity metric to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Pc,
    Edc,
    Mss,
    Esr,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Pc,
        MetricKind::Edc,
        MetricKind::Mss,
        MetricKind::Esr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Pc => "pc",
            MetricKind::Edc => "edc",
            MetricKind::Mss => "mss",
            MetricKind::Esr => "esr",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pc" => Ok(MetricKind::Pc),
            "edc" => Ok(MetricKind::Edc),
            "mss" => Ok(MetricKind::Mss),
            "esr" => Ok(MetricKind::Esr),
            other => Err(Error::InvalidArgument(format!(
                "unknown metric {other:?}; expected one of pc, edc, mss, esr"
            ))),
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Configuration bundle covering all four metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricConfig {
    pub pc: PcConfig,
    pub mss: MssConfig,
    /// Band centers used by the energy decay metric.
    pub bands: BandSet,
    /// Decibel clamp for normalized decay curves.
    pub floor_db: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            pc: PcConfig::default(),
            mss: MssConfig::default(),
            bands: third_octave_centers(),
            floor_db: DEFAULT_FLOOR_DB,
        }
    }
}

impl MetricConfig {
    /// Stable digest of the parameters relevant to one metric.
    pub fn digest(&self, kind: MetricKind) -> String {
        let canonical = match kind {
            MetricKind::Pc => self.pc.canonical(),
            MetricKind::Mss => self.mss.canonical(),
            MetricKind::Edc => {
                let centers: Vec<String> =
                    self.bands.centers().iter().map(|c| c.to_string()).collect();
                format!("edc:bands=[{}],floor={}", centers.join(";"), self.floor_db)
            }
            MetricKind::Esr => "esr".to_string(),
        };
        digest_str(&canonical)
    }

    /// Computes one metric for a (reference, analyzed) pair.
    pub fn compute(&self, kind: MetricKind, h: &Signal, h_hat: &Signal) -> Result<f64> {
        match kind {
            MetricKind::Pc => pc_loss(h, h_hat, &self.pc),
            MetricKind::Edc => edc_loss(h, h_hat, &self.bands, self.floor_db),
            MetricKind::Mss => mss_loss(h, h_hat, &self.mss),
            MetricKind::Esr => esr_loss(h, h_hat),
        }
    }
}

/// A single metric evaluation over an identified pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub metric: MetricKind,
    pub ref_id: String,
    pub analyzed_id: String,
    pub value: f64,
    pub config_digest: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_round_trip() {
        for kind in MetricKind::ALL {
            assert_eq!(kind.name().parse::<MetricKind>().unwrap(), kind);
        }
        assert!("spectral".parse::<MetricKind>().is_err());
    }

    #[test]
    fn digests_are_stable_and_distinct() {
        let cfg = MetricConfig::default();
        assert_eq!(cfg.digest(MetricKind::Pc), cfg.digest(MetricKind::Pc));
        assert_ne!(cfg.digest(MetricKind::Pc), cfg.digest(MetricKind::Mss));
        let mut other = MetricConfig::default();
        other.pc.stride = 2;
        assert_ne!(cfg.digest(MetricKind::Pc), other.digest(MetricKind::Pc));
        assert_eq!(cfg.digest(MetricKind::Esr), other.digest(MetricKind::Esr));
    }
}
