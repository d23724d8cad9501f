//! Shared helpers for integration tests: independent brute-force oracles
//! and small statistics utilities. These deliberately avoid the library's
//! own computation paths wherever they act as an oracle.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revsim_core::Signal;

/// Plain quadruple-loop cross-correlation with valid padding and a
/// symmetric stride.
pub fn conv2d_oracle(input: &Array2<f64>, kernel: &Array2<f64>, stride: usize) -> Array2<f64> {
    let (ih, iw) = input.dim();
    let (kh, kw) = kernel.dim();
    let oh = (ih - kh) / stride + 1;
    let ow = (iw - kw) / stride + 1;
    let mut out = Array2::zeros((oh, ow));
    for i in 0..oh {
        for j in 0..ow {
            let mut acc = 0.0;
            for a in 0..kh {
                for b in 0..kw {
                    acc += input[[i * stride + a, j * stride + b]] * kernel[[a, b]];
                }
            }
            out[[i, j]] = acc;
        }
    }
    out
}

/// O(L^2) backward energy sum: `edc[t] = sum_{tau=t}^{L-1} x[tau]^2`.
pub fn schroeder_oracle(samples: &[f64]) -> Vec<f64> {
    (0..samples.len())
        .map(|t| samples[t..].iter().map(|s| s * s).sum())
        .collect()
}

pub fn white_noise(seed: u64, len: usize, sample_rate: u32) -> Signal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Signal::new(
        (0..len).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect(),
        sample_rate,
    )
    .unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| rng.random::<f64>() * 2.0 - 1.0)
}

/// Spearman rank correlation; ties receive average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let rx = ranks(x);
    let ry = ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    cov / (vx.sqrt() * vy.sqrt())
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = rank;
        }
        i = j + 1;
    }
    out
}

pub fn median_of(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
