//! Strided 2D convolution in the deep-learning sense (cross-correlation,
//! no kernel flip, valid region only).

use ndarray::Array2;

use crate::error::{Error, Result};

/// Valid-region cross-correlation of `input` with `kernel`, using the same
/// stride on both axes. Output dimension per axis is
/// `(in - k) / stride + 1`.
pub fn conv2d_strided(
    input: &Array2<f64>,
    kernel: &Array2<f64>,
    stride: usize,
) -> Result<Array2<f64>> {
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be >= 1".into()));
    }
    let (in_h, in_w) = input.dim();
    let (k_h, k_w) = kernel.dim();
    if k_h == 0 || k_w == 0 {
        return Err(Error::InvalidArgument("kernel must be non-empty".into()));
    }
    if k_h > in_h || k_w > in_w {
        return Err(Error::InvalidArgument(format!(
            "kernel {k_h}x{k_w} larger than input {in_h}x{in_w}"
        )));
    }
    let out_h = (in_h - k_h) / stride + 1;
    let out_w = (in_w - k_w) / stride + 1;

    let mut out = Array2::zeros((out_h, out_w));
    for oi in 0..out_h {
        for oj in 0..out_w {
            let mut acc = 0.0;
            for ki in 0..k_h {
                let in_row = input.row(oi * stride + ki);
                let in_row = &in_row.as_slice().expect("contiguous row")
                    [oj * stride..oj * stride + k_w];
                let k_row = kernel.row(ki);
                let k_row = k_row.as_slice().expect("contiguous row");
                for kj in 0..k_w {
                    acc += in_row[kj] * k_row[kj];
                }
            }
            out[[oi, oj]] = acc;
        }
    }
    Ok(out)
}
