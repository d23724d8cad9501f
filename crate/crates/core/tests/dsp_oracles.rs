//! Brute-force oracle equivalence and analytic identities for the DSP
//! primitives.

mod common;

use common::{conv2d_oracle, random_matrix, schroeder_oracle, white_noise};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use revsim_core::dsp::{
    band_edges, band_split, bandpass, conv2d_strided, hann_window, power_spectrogram,
    schroeder_edc, stft, third_octave_centers,
};
use revsim_core::Signal;

#[test]
fn conv2d_matches_oracle_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for case in 0..1200 {
        let kh = rng.random_range(1..=4);
        let kw = rng.random_range(1..=4);
        let ih = rng.random_range(kh..=16);
        let iw = rng.random_range(kw..=16);
        let stride = rng.random_range(1..=4);
        let input = random_matrix(&mut rng, ih, iw);
        let kernel = random_matrix(&mut rng, kh, kw);
        let got = conv2d_strided(&input, &kernel, stride).unwrap();
        let want = conv2d_oracle(&input, &kernel, stride);
        assert_eq!(got.dim(), want.dim(), "case {case}");
        for (g, w) in got.iter().zip(want.iter()) {
            let tol = 1e-12 * w.abs().max(1.0);
            assert!((g - w).abs() <= tol, "case {case}: {g} vs {w}");
        }
    }
}

#[test]
fn schroeder_matches_oracle_on_random_signals() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for case in 0..120 {
        let len = rng.random_range(1..=4096);
        let samples: Vec<f64> = (0..len).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let signal = Signal::new(samples.clone(), 48_000).unwrap();
        let got = schroeder_edc(&signal);
        let want = schroeder_oracle(&samples);
        for (g, w) in got.iter().zip(&want) {
            assert!(
                (g - w).abs() <= 1e-10 * w.abs().max(1e-300),
                "case {case}: {g} vs {w}"
            );
        }
    }
}

#[test]
fn parseval_holds_per_frame() {
    let window_len = 64;
    let hop = 32;
    let signal = white_noise(7, 1024, 48_000);
    let spec = stft(&signal, window_len, hop).unwrap();
    let power = power_spectrogram(&spec);
    let window = hann_window(window_len).unwrap();

    for t in 0..spec.n_frames {
        // One-sided sum with the symmetry correction: interior bins count
        // twice, DC and Nyquist once.
        let mut spectral = power[[0, t]] + power[[window_len / 2, t]];
        for f in 1..window_len / 2 {
            spectral += 2.0 * power[[f, t]];
        }
        let frame_energy: f64 = signal.samples()[t * hop..t * hop + window_len]
            .iter()
            .zip(&window)
            .map(|(s, w)| (s * w) * (s * w))
            .sum();
        let want = frame_energy * window_len as f64;
        assert!(
            (spectral - want).abs() <= 1e-9 * want.abs().max(1e-12),
            "frame {t}: {spectral} vs {want}"
        );
    }
}

#[test]
fn bandpass_is_idempotent() {
    let signal = white_noise(11, 16_384, 48_000);
    for center in [125.0, 1000.0, 8000.0] {
        let once = bandpass(&signal, center).unwrap();
        let twice = bandpass(&once, center).unwrap();
        let scale = once.energy().sqrt();
        for (a, b) in once.samples().iter().zip(twice.samples()) {
            assert!((a - b).abs() <= 1e-9 * scale, "center {center}");
        }
    }
}

/// Independent FFT masking route used to restrict a signal to a frequency
/// range, written directly against rustfft.
fn restrict_to_range(signal: &Signal, lo: f64, hi: f64) -> Vec<f64> {
    let n = signal.len();
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex64> = signal
        .samples()
        .iter()
        .map(|&s| Complex64::new(s, 0.0))
        .collect();
    planner.plan_fft_forward(n).process(&mut buf);
    let df = signal.sample_rate() as f64 / n as f64;
    for (k, v) in buf.iter_mut().enumerate() {
        let freq = if k <= n / 2 { k as f64 } else { (n - k) as f64 } * df;
        if !(freq >= lo && freq < hi) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

#[test]
fn bands_tile_the_spectrum_contiguously() {
    let signal = white_noise(13, 32_768, 48_000);
    let bands = third_octave_centers();
    let split = band_split(&signal, &bands).unwrap();

    let mut sum = vec![0.0; signal.len()];
    for band in &split {
        for (acc, s) in sum.iter_mut().zip(band.samples()) {
            *acc += s;
        }
    }

    let lo = band_edges(bands.centers()[0]).0;
    let hi = band_edges(bands.centers()[28]).1;
    let restricted = restrict_to_range(&signal, lo, hi);

    let sum_energy: f64 = sum.iter().map(|s| s * s).sum();
    let restricted_energy: f64 = restricted.iter().map(|s| s * s).sum();
    assert!(
        (sum_energy - restricted_energy).abs() <= 1e-6 * restricted_energy,
        "sum {sum_energy} vs restricted {restricted_energy}"
    );
    let scale = restricted_energy.sqrt();
    for (a, b) in sum.iter().zip(&restricted) {
        assert!((a - b).abs() <= 1e-9 * scale);
    }
}

#[test]
fn edc_db_curves_start_at_zero_and_never_increase() {
    for seed in 0..20 {
        let signal = white_noise(seed, 4096, 48_000);
        let edc = schroeder_edc(&signal);
        let db = revsim_core::dsp::edc_to_db_normalized(&edc, -120.0).unwrap();
        assert_eq!(db[0], 0.0);
        for w in db.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }
}
