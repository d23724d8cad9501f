//! Synthetic impulse responses: exponentially decaying seeded noise,
//! broadband or per-band.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dsp::bands::{bandpass, BandSet};
use crate::error::{Error, Result};
use crate::signal::Signal;

/// Amplitude decay exponent: `exp(-LN_1000 * t / t60)` loses 60 dB of
/// energy per `t60` seconds.
pub const LN_1000: f64 = 6.907_755_278_982_137;

/// Decay description: one broadband reverberation time, or one per band.
#[derive(Debug, Clone, PartialEq)]
pub enum DecayProfile {
    Broadband { t60_s: f64 },
    PerBand { bands: BandSet, t60_s: Vec<f64> },
}

/// Recipe for one synthetic impulse response.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub decay: DecayProfile,
    pub length_s: f64,
    pub sample_rate: u32,
    pub seed: u64,
    /// Optional additive white noise floor in dB relative to the initial
    /// decay envelope.
    pub noise_floor_db: Option<f64>,
}

impl SynthSpec {
    pub fn broadband(t60_s: f64, length_s: f64, sample_rate: u32, seed: u64) -> Self {
        Self {
            decay: DecayProfile::Broadband { t60_s },
            length_s,
            sample_rate,
            seed,
            noise_floor_db: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.length_s < 0.1 {
            return Err(Error::InvalidArgument(format!(
                "length {} s is below the 0.1 s minimum",
                self.length_s
            )));
        }
        if self.sample_rate == 0 {
            return Err(Error::InvalidArgument("sample rate must be positive".into()));
        }
        match &self.decay {
            DecayProfile::Broadband { t60_s } => {
                if !(*t60_s > 0.0) {
                    return Err(Error::InvalidArgument("t60 must be positive".into()));
                }
            }
            DecayProfile::PerBand { bands, t60_s } => {
                if bands.len() != t60_s.len() {
                    return Err(Error::InvalidArgument(format!(
                        "{} per-band t60 values for {} bands",
                        t60_s.len(),
                        bands.len()
                    )));
                }
                if t60_s.iter().any(|t| !(*t > 0.0)) {
                    return Err(Error::InvalidArgument("t60 must be positive".into()));
                }
            }
        }
        Ok(())
    }
}

/// Generates the impulse response described by `spec`. Bit-identical for
/// identical specs.
pub fn synth_rir(spec: &SynthSpec) -> Result<Signal> {
    spec.validate()?;
    let len = (spec.length_s * spec.sample_rate as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut samples = match &spec.decay {
        DecayProfile::Broadband { t60_s } => decaying_noise(&mut rng, len, spec.sample_rate, *t60_s),
        DecayProfile::PerBand { bands, t60_s } => {
            let mut acc = vec![0.0; len];
            for (&center, &t60) in bands.centers().iter().zip(t60_s) {
                let raw = decaying_noise(&mut rng, len, spec.sample_rate, t60);
                let banded = bandpass(&Signal::from_trusted(raw, spec.sample_rate), center)?;
                for (a, b) in acc.iter_mut().zip(banded.samples()) {
                    *a += b;
                }
            }
            acc
        }
    };

    if let Some(floor_db) = spec.noise_floor_db {
        let amplitude = 10f64.powf(floor_db / 20.0);
        for s in samples.iter_mut() {
            let n: f64 = StandardNormal.sample(&mut rng);
            *s += amplitude * n;
        }
    }
    Ok(Signal::from_trusted(samples, spec.sample_rate))
}

fn decaying_noise(rng: &mut ChaCha8Rng, len: usize, sample_rate: u32, t60_s: f64) -> Vec<f64> {
    let rate = LN_1000 / t60_s; // zero when t60 is infinite
    (0..len)
        .map(|n| {
            let t = n as f64 / sample_rate as f64;
            let g: f64 = StandardNormal.sample(rng);
            g * (-rate * t).exp()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::{edc_to_db_normalized, schroeder_edc, DEFAULT_FLOOR_DB};

    #[test]
    fn t60_recovered_from_decay_curve() {
        // Median decay at t = 1 s read from the Schroeder curve of the first
        // 1.5 s of a 2 s response.
        let mut at_one_second: Vec<f64> = (0..20)
            .map(|seed| {
                let spec = SynthSpec::broadband(1.0, 2.0, 48_000, seed);
                let rir = synth_rir(&spec).unwrap();
                let head = rir.truncated(72_000).unwrap();
                let db = edc_to_db_normalized(&schroeder_edc(&head), DEFAULT_FLOOR_DB).unwrap();
                db[48_000]
            })
            .collect();
        at_one_second.sort_by(f64::total_cmp);
        let median = (at_one_second[9] + at_one_second[10]) / 2.0;
        assert!(
            (median + 60.0).abs() <= 1.0,
            "median decay at 1 s: {median} dB"
        );
    }

    #[test]
    fn infinite_t60_is_flat_noise() {
        let spec = SynthSpec::broadband(f64::INFINITY, 1.0, 8_000, 3);
        let rir = synth_rir(&spec).unwrap();
        let edc = schroeder_edc(&rir);
        // Remaining energy of stationary noise falls linearly with time:
        // at half the signal, about half the energy remains.
        let mid = edc[edc.len() / 2] / edc[0];
        assert!((mid - 0.5).abs() < 0.05, "mid-point energy ratio {mid}");
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let spec = SynthSpec::broadband(0.7, 0.5, 16_000, 42);
        let a = synth_rir(&spec).unwrap();
        let b = synth_rir(&spec).unwrap();
        assert_eq!(a.samples(), b.samples());

        let other = SynthSpec::broadband(0.7, 0.5, 16_000, 43);
        assert_ne!(synth_rir(&other).unwrap().samples(), a.samples());
    }

    /// Least-squares decay slope of the normalized dB curve between -5 and
    /// -20 dB, converted to a reverberation time. The upper bound stays well
    /// above the circular-leakage floor of the brickwall band filter.
    fn measure_t60(db: &[f64], sample_rate: u32) -> f64 {
        let lo = db.iter().position(|&v| v <= -5.0).unwrap();
        let hi = db.iter().position(|&v| v <= -20.0).unwrap();
        let n = (hi - lo) as f64;
        let (mut sx, mut sy, mut sxy, mut sxx) = (0.0, 0.0, 0.0, 0.0);
        for (i, &v) in db[lo..hi].iter().enumerate() {
            let t = (lo + i) as f64 / sample_rate as f64;
            sx += t;
            sy += v;
            sxy += t * v;
            sxx += t * t;
        }
        let slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
        -60.0 / slope
    }

    #[test]
    fn per_band_t60_recovered_above_200hz() {
        let bands = BandSet::new(vec![250.0, 500.0, 1000.0, 2000.0]).unwrap();
        let t60s = vec![0.8, 0.7, 0.6, 0.5];
        for (&center, &t60) in bands.centers().iter().zip(&t60s) {
            // Narrow bands have few independent noise samples per decay, so
            // the estimate is taken as a median over seeds.
            let mut measured: Vec<f64> = (0..5)
                .map(|seed| {
                    let spec = SynthSpec {
                        decay: DecayProfile::PerBand {
                            bands: bands.clone(),
                            t60_s: t60s.clone(),
                        },
                        length_s: 2.0,
                        sample_rate: 16_000,
                        seed,
                        noise_floor_db: None,
                    };
                    let rir = synth_rir(&spec).unwrap();
                    let banded = bandpass(&rir, center).unwrap();
                    let head = banded.truncated(24_000).unwrap();
                    let db =
                        edc_to_db_normalized(&schroeder_edc(&head), DEFAULT_FLOOR_DB).unwrap();
                    measure_t60(&db, 16_000)
                })
                .collect();
            measured.sort_by(f64::total_cmp);
            let median = measured[2];
            assert!(
                (median - t60).abs() <= 0.1 * t60,
                "band {center} Hz: measured {median}, expected {t60}"
            );
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(synth_rir(&SynthSpec::broadband(0.0, 1.0, 48_000, 0)).is_err());
        assert!(synth_rir(&SynthSpec::broadband(1.0, 0.05, 48_000, 0)).is_err());
        let mismatched = SynthSpec {
            decay: DecayProfile::PerBand {
                bands: BandSet::new(vec![500.0, 1000.0]).unwrap(),
                t60_s: vec![1.0],
            },
            length_s: 1.0,
            sample_rate: 48_000,
            seed: 0,
            noise_floor_db: None,
        };
        assert!(synth_rir(&mismatched).is_err());
    }
}
