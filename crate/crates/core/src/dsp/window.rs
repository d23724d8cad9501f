//! Hann windows, 1D and 2D.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Periodic Hann window: `w[n] = 0.5 * (1 - cos(2*pi*n / length))`.
pub fn hann_window(length: usize) -> Result<Vec<f64>> {
    if length == 0 {
        return Err(Error::InvalidArgument("window length must be >= 1".into()));
    }
    let step = std::f64::consts::TAU / length as f64;
    Ok((0..length)
        .map(|n| 0.5 * (1.0 - (step * n as f64).cos()))
        .collect())
}

/// Square 2D Hann kernel, the outer product of two periodic Hann windows.
pub fn hann_kernel_2d(side: usize) -> Result<Array2<f64>> {
    let w = hann_window(side)?;
    Ok(Array2::from_shape_fn((side, side), |(i, j)| w[i] * w[j]))
}
