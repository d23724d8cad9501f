//! Subcommand implementations.

pub mod aggregate;
pub mod compute;
pub mod preprocess;
pub mod sweep;
pub mod synth;

use anyhow::{Context, Result};

use revsim_core::dataset::{load_manifest_resolved, read_rir, PanelBins, RirEntry};
use revsim_core::evaluation::StudyEntry;

/// Loads every manifest entry's audio and attaches partition labels from
/// the default panel bins.
pub fn load_study_entries(manifest: &std::path::Path) -> Result<Vec<StudyEntry>> {
    let entries = load_manifest_resolved(manifest)
        .with_context(|| format!("loading manifest {}", manifest.display()))?;
    load_entries(&entries)
}

pub fn load_entries(entries: &[RirEntry]) -> Result<Vec<StudyEntry>> {
    let bins = PanelBins::default_bins();
    entries
        .iter()
        .map(|entry| {
            let rir = read_rir(entry).with_context(|| format!("reading entry {:?}", entry.id))?;
            Ok(StudyEntry {
                id: rir.id,
                partition: bins.label_for(rir.n_reflective_panels),
                n_reflective_panels: rir.n_reflective_panels,
                mic_position: rir.mic_position,
                signal: rir.signal,
            })
        })
        .collect()
}
