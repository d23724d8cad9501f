//! Short-time Fourier transform with periodic Hann analysis windows.
//!
//! Framing starts at sample 0 with no centering or padding; a trailing
//! partial frame is discarded. The spectrum is one-sided and carries no
//! amplitude normalization.

use ndarray::Array2;
use rustfft::num_complex::Complex64;

use super::{fft, window};
use crate::error::{Error, Result};
use crate::signal::Signal;

/// One-sided complex STFT together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct Spectrogram {
    /// Complex bins, frequency-major: shape `(fft_size/2 + 1, n_frames)`.
    pub bins: Array2<Complex64>,
    pub window_length: usize,
    pub hop: usize,
    pub fft_size: usize,
    pub n_frames: usize,
    pub one_sided: bool,
}

impl Spectrogram {
    pub fn n_bins(&self) -> usize {
        self.bins.dim().0
    }
}

/// STFT with the FFT length equal to the window length.
pub fn stft(signal: &Signal, window_length: usize, hop: usize) -> Result<Spectrogram> {
    stft_with_fft(signal, window_length, hop, window_length)
}

/// STFT where each windowed frame is zero-padded up to `fft_size`.
pub fn stft_with_fft(
    signal: &Signal,
    window_length: usize,
    hop: usize,
    fft_size: usize,
) -> Result<Spectrogram> {
    if hop == 0 {
        return Err(Error::InvalidArgument("hop must be >= 1".into()));
    }
    if window_length == 0 {
        return Err(Error::InvalidArgument("window length must be >= 1".into()));
    }
    if fft_size < window_length {
        return Err(Error::InvalidArgument(format!(
            "fft size {fft_size} smaller than window length {window_length}"
        )));
    }
    let len = signal.len();
    if len < window_length {
        return Err(Error::InvalidArgument(format!(
            "signal of {len} samples is shorter than one window of {window_length}"
        )));
    }
    let n_frames = (len - window_length) / hop + 1;
    let n_bins = fft_size / 2 + 1;
    let win = window::hann_window(window_length)?;
    let plan = fft::forward(fft_size);

    let samples = signal.samples();
    let mut bins = Array2::zeros((n_bins, n_frames));
    let mut frame = vec![Complex64::default(); fft_size];
    for t in 0..n_frames {
        let start = t * hop;
        for (i, f) in frame.iter_mut().enumerate() {
            *f = if i < window_length {
                Complex64::new(samples[start + i] * win[i], 0.0)
            } else {
                Complex64::default()
            };
        }
        plan.process(&mut frame);
        for (f, value) in frame.iter().take(n_bins).enumerate() {
            bins[[f, t]] = *value;
        }
    }

    Ok(Spectrogram {
        bins,
        window_length,
        hop,
        fft_size,
        n_frames,
        one_sided: true,
    })
}

/// Elementwise squared magnitude of a spectrogram.
pub fn power_spectrogram(spec: &Spectrogram) -> Array2<f64> {
    spec.bins.mapv(|c| c.norm_sqr())
}

/// Elementwise magnitude of a spectrogram.
pub fn magnitude_spectrogram(spec: &Spectrogram) -> Array2<f64> {
    spec.bins.mapv(|c| c.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signal(samples: Vec<f64>) -> Signal {
        Signal::new(samples, 48_000).unwrap()
    }

    #[test]
    fn impulse_at_zero_is_killed_by_window_edge() {
        let mut s = vec![0.0; 8];
        s[0] = 1.0;
        let spec = stft(&signal(s), 4, 1).unwrap();
        // w[0] = 0, so frame 0 is all zeros.
        for f in 0..spec.n_bins() {
            assert_eq!(spec.bins[[f, 0]].norm(), 0.0);
        }
    }

    #[test]
    fn dc_and_nyquist_of_constant_signal() {
        let spec = stft(&signal(vec![1.0; 8]), 4, 4).unwrap();
        assert_eq!(spec.n_frames, 2);
        for t in 0..2 {
            assert!((spec.bins[[0, t]].norm() - 2.0).abs() < 1e-12);
            assert!(spec.bins[[2, t]].norm() < 1e-12);
        }
    }

    #[test]
    fn frame_count_formula() {
        let s = signal(vec![0.0; 2048]);
        let spec = stft(&s, 1024, 256).unwrap();
        assert_eq!(spec.n_frames, 5);
        assert_eq!(spec.n_bins(), 513);
    }

    #[test]
    fn too_short_signal_rejected() {
        let s = signal(vec![0.0; 100]);
        assert!(stft(&s, 1024, 256).is_err());
    }

    #[test]
    fn power_matches_elementwise_recomputation() {
        let s = signal((0..64).map(|i| ((i * 7 % 13) as f64 - 6.0) * 0.1).collect());
        let spec = stft(&s, 16, 8).unwrap();
        let p = power_spectrogram(&spec);
        for ((f, t), &v) in p.indexed_iter() {
            let c = spec.bins[[f, t]];
            assert_eq!(v, c.re * c.re + c.im * c.im);
        }
        assert!(p.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn power_of_complex_value() {
        let c = Complex64::new(3.0, 4.0);
        assert_eq!(c.norm_sqr(), 25.0);
    }
}
