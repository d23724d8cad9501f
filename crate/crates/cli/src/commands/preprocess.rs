//! `preprocess`: trim every manifest entry to its late-reverberation
//! segment, writing trimmed audio, an onset report, and a manifest for the
//! trimmed corpus.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;

use crate::config::RunConfig;
use crate::output::write_atomic;
use revsim_core::dataset::{load_manifest_resolved, read_rir, save_manifest, RirEntry};
use revsim_core::preprocess::{detect_onset, trim_late_reverb, TrimSpec};

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Run configuration (manifest, onset parameters, mixing time).
    #[arg(long)]
    pub config: PathBuf,
}

pub fn run(cfg: &RunConfig) -> Result<()> {
    let manifest_path = cfg.manifest_path()?;
    let entries = load_manifest_resolved(manifest_path)
        .with_context(|| format!("loading manifest {}", manifest_path.display()))?;
    let out_dir = cfg.resolve_output_dir();
    let trimmed_dir = out_dir.join("trimmed");
    std::fs::create_dir_all(&trimmed_dir)
        .with_context(|| format!("creating {}", trimmed_dir.display()))?;

    let mut report = String::from("id,onset_sample,trim_start,trimmed_len,sample_rate\n");
    let mut trimmed_entries = Vec::new();
    for entry in &entries {
        let rir = read_rir(entry).with_context(|| format!("reading entry {:?}", entry.id))?;
        let onset = detect_onset(&rir.signal, &cfg.preprocess.onset)
            .with_context(|| format!("onset detection for {:?}", entry.id))?;
        let spec = TrimSpec::new(
            onset,
            cfg.preprocess.t_mix_ms,
            rir.signal.len(),
            rir.signal.sample_rate(),
        )
        .with_context(|| format!("trim window for {:?}", entry.id))?;
        let trimmed = trim_late_reverb(&rir.signal, onset, cfg.preprocess.t_mix_ms)
            .with_context(|| format!("trimming {:?}", entry.id))?;

        let file = format!("{}.wav", entry.id);
        revsim_core::dataset::write_wav_f32(
            &trimmed_dir.join(&file),
            trimmed.samples(),
            trimmed.sample_rate(),
        )
        .with_context(|| format!("writing trimmed {file}"))?;

        report.push_str(&format!(
            "{},{},{},{},{}\n",
            entry.id,
            onset,
            spec.start_sample(rir.signal.sample_rate()),
            trimmed.len(),
            trimmed.sample_rate()
        ));
        trimmed_entries.push(RirEntry {
            path: Path::new("trimmed").join(&file).to_string_lossy().into_owned(),
            ..entry.clone()
        });
    }

    write_atomic(&out_dir.join("onsets.csv"), report.as_bytes())?;
    save_manifest(&out_dir.join("manifest_trimmed.csv"), &trimmed_entries)
        .context("writing trimmed manifest")?;
    println!(
        "preprocess: trimmed {} entries into {}",
        entries.len(),
        trimmed_dir.display()
    );
    Ok(())
}
