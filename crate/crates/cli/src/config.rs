//! Declarative run configuration: a TOML file merged with command-line
//! overrides (flags win).

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use revsim_core::dsp::{third_octave_centers, BandSet, DEFAULT_FLOOR_DB};
use revsim_core::metrics::{MetricConfig, MetricKind, MssConfig, PcConfig};
use revsim_core::preprocess::PreprocessConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Manifest CSV; relative paths inside it resolve against its directory.
    pub manifest: Option<PathBuf>,
    /// Metrics to compute, a subset of pc, edc, mss, esr.
    pub metrics: Vec<MetricKind>,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    pub preprocess: PreprocessConfig,
    pub pc: PcConfig,
    pub mss: MssConfig,
    pub bands: BandsConfig,
    /// When present, each panel-count partition is subsampled to this many
    /// entries per microphone position before the pairwise study.
    pub sampling: Option<SamplingConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            manifest: None,
            metrics: MetricKind::ALL.to_vec(),
            seed: 0,
            output_dir: None,
            preprocess: PreprocessConfig::default(),
            pc: PcConfig::default(),
            mss: MssConfig::default(),
            bands: BandsConfig::default(),
            sampling: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandsConfig {
    /// Band centers for the energy decay metric; the standard 29-band
    /// one-third octave set when omitted.
    pub centers: Option<Vec<f64>>,
    pub floor_db: f64,
}

impl Default for BandsConfig {
    fn default() -> Self {
        Self {
            centers: None,
            floor_db: DEFAULT_FLOOR_DB,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    pub per_mic: usize,
}

/// Flag-level overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub metrics: Option<Vec<MetricKind>>,
    pub output_dir: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.metrics.is_empty() {
            bail!("config selects no metrics");
        }
        let mut seen = self.metrics.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.metrics.len() {
            bail!("config lists a metric twice");
        }
        self.pc.validate().context("pc config")?;
        self.mss.validate().context("mss config")?;
        self.preprocess.onset.validate().context("preprocess config")?;
        if let Some(s) = &self.sampling {
            if s.per_mic == 0 {
                bail!("sampling.per_mic must be >= 1 when present");
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.seed = seed;
        }
        if let Some(metrics) = &overrides.metrics {
            self.metrics = metrics.clone();
        }
        if let Some(dir) = &overrides.output_dir {
            self.output_dir = Some(dir.clone());
        }
        if let Some(manifest) = &overrides.manifest {
            self.manifest = Some(manifest.clone());
        }
    }

    /// Output directory: flag/config value, then `REVSIM_OUTPUT_DIR`, then
    /// the current directory.
    pub fn resolve_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os("REVSIM_OUTPUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn metric_config(&self) -> Result<MetricConfig> {
        let bands = match &self.bands.centers {
            Some(centers) => {
                BandSet::new(centers.clone()).context("bands.centers in config")?
            }
            None => third_octave_centers(),
        };
        Ok(MetricConfig {
            pc: self.pc.clone(),
            mss: self.mss.clone(),
            bands,
            floor_db: self.bands.floor_db,
        })
    }

    pub fn manifest_path(&self) -> Result<&Path> {
        self.manifest
            .as_deref()
            .context("no manifest configured; set `manifest` in the config or pass --manifest")
    }
}

pub fn parse_metric_list(text: &str) -> Result<Vec<MetricKind>> {
    text.split(',')
        .map(|s| s.trim().parse::<MetricKind>().map_err(anyhow::Error::from))
        .collect()
}
