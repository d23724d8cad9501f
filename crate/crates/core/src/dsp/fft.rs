//! Shared FFT plans. rustfft caches plans per length inside the planner;
//! one planner per thread keeps repeated transforms cheap without locking.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub fn forward(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

pub fn inverse(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

/// Forward FFT of a real signal, returned as a full complex spectrum.
pub fn fft_real(samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    forward(samples.len()).process(&mut buf);
    buf
}

/// Inverse FFT of a spectrum assumed conjugate-symmetric; returns the real
/// part scaled by 1/N.
pub fn ifft_to_real(mut spectrum: Vec<Complex64>) -> Vec<f64> {
    let n = spectrum.len();
    inverse(n).process(&mut spectrum);
    let scale = 1.0 / n as f64;
    spectrum.iter().map(|c| c.re * scale).collect()
}
