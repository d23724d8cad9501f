//! `synth`: generate a desk-scale corpus of exponentially decaying noise
//! responses with a monotone panel-count-to-decay-time mapping.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use revsim_core::dataset::{save_manifest, synth_rir, write_wav_f32, RirEntry, SynthSpec};
use revsim_core::digest::derive_seed;

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Number of panel-count groups.
    #[arg(long, default_value_t = 11)]
    pub groups: usize,
    /// Responses per group.
    #[arg(long = "per-group", default_value_t = 25)]
    pub per_group: usize,
    /// Microphone positions to cycle through (1..=5).
    #[arg(long, default_value_t = 5)]
    pub mics: u8,
    /// Decay time of the first group, seconds.
    #[arg(long = "t60-min", default_value_t = 0.5)]
    pub t60_min: f64,
    /// Decay time of the last group, seconds.
    #[arg(long = "t60-max", default_value_t = 2.0)]
    pub t60_max: f64,
    /// Length of each response, seconds.
    #[arg(long = "length-s", default_value_t = 1.5)]
    pub length_s: f64,
    #[arg(long = "sample-rate", default_value_t = 48_000)]
    pub sample_rate: u32,
    /// Additive white noise floor in dB relative to the initial envelope.
    #[arg(long = "noise-floor-db", allow_negative_numbers = true)]
    pub noise_floor_db: Option<f64>,
}

/// The panel count emulated for a group: evenly spread over 0..=55,
/// increasing with the group index, so decay time grows with panel count.
pub fn panels_for_group(group: usize, groups: usize) -> u8 {
    if groups <= 1 {
        return 0;
    }
    (group as f64 * 55.0 / (groups - 1) as f64).round() as u8
}

/// The decay time for a group: log-spaced between the endpoints.
pub fn t60_for_group(group: usize, groups: usize, t60_min: f64, t60_max: f64) -> f64 {
    if groups <= 1 {
        return t60_min;
    }
    t60_min * (t60_max / t60_min).powf(group as f64 / (groups - 1) as f64)
}

pub fn run(args: &SynthArgs, seed: u64, output_dir: &PathBuf) -> Result<()> {
    if args.groups == 0 {
        bail!("--groups must be at least 1");
    }
    if args.per_group == 0 {
        bail!("--per-group must be at least 1");
    }
    if !(1..=5).contains(&args.mics) {
        bail!("--mics must be within 1..=5");
    }
    if !(args.t60_min > 0.0) || args.t60_max < args.t60_min {
        bail!("decay times must satisfy 0 < t60-min <= t60-max");
    }
    std::fs::create_dir_all(output_dir)
        .with_context(|| format!("creating {}", output_dir.display()))?;

    let mut entries = Vec::new();
    for group in 0..args.groups {
        let panels = panels_for_group(group, args.groups);
        let t60 = t60_for_group(group, args.groups, args.t60_min, args.t60_max);
        for k in 0..args.per_group {
            let mic = 1 + (k % args.mics as usize) as u8;
            let id = format!("g{group:02}p{panels:02}m{mic}k{k:02}");
            let mut spec = SynthSpec::broadband(
                t60,
                args.length_s,
                args.sample_rate,
                derive_seed(seed, &format!("synth:{group}:{mic}:{k}")),
            );
            spec.noise_floor_db = args.noise_floor_db;
            let rir = synth_rir(&spec).context("synthesizing response")?;
            let file = format!("{id}.wav");
            write_wav_f32(&output_dir.join(&file), rir.samples(), args.sample_rate)
                .with_context(|| format!("writing {file}"))?;
            entries.push(RirEntry {
                id,
                path: file,
                n_reflective_panels: panels,
                mic_position: mic,
                extra: BTreeMap::from([
                    ("group".to_string(), group.to_string()),
                    ("t60_s".to_string(), format!("{t60:.6}")),
                ]),
            });
        }
    }
    let manifest = output_dir.join("manifest.csv");
    save_manifest(&manifest, &entries).context("writing manifest")?;
    println!(
        "synth: wrote {} responses and {} ({} groups x {} per group)",
        entries.len(),
        manifest.display(),
        args.groups,
        args.per_group
    );
    Ok(())
}
