//! Corpus ingestion and generation: manifest parsing, WAV decoding,
//! panel-count partitioning, seeded subsampling, and synthetic
//! impulse responses for desk-scale experiments.

pub mod manifest;
pub mod partition;
pub mod synth;
pub mod wav;

use std::path::Path;

use crate::error::Result;
use crate::signal::Signal;

pub use manifest::{load_manifest, load_manifest_resolved, save_manifest, RirEntry, MAX_PANELS};
pub use partition::{partition_by_panels, sample_subset, PanelBins, Partition};
pub use synth::{synth_rir, DecayProfile, SynthSpec};
pub use wav::{read_wav_mono, write_wav_f32, WavData};

/// A loaded impulse response with its corpus metadata.
#[derive(Debug, Clone)]
pub struct Rir {
    pub id: String,
    pub n_reflective_panels: u8,
    pub mic_position: u8,
    pub signal: Signal,
}

/// Reads the WAV file behind a manifest entry.
pub fn read_rir(entry: &RirEntry) -> Result<Rir> {
    let wav = read_wav_mono(Path::new(&entry.path))?;
    Ok(Rir {
        id: entry.id.clone(),
        n_reflective_panels: entry.n_reflective_panels,
        mic_position: entry.mic_position,
        signal: Signal::new(wav.samples, wav.sample_rate)?,
    })
}
