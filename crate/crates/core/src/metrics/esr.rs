//! Error-to-signal ratio: time-domain squared error normalized by the
//! energy of the reference. Inputs are expected to be late-reverberation
//! segments already trimmed upstream.

use crate::error::{Error, Result};
use crate::signal::{check_pair, Signal};

/// `sum |h - h_hat|^2 / sum |h|^2` over the full buffers.
pub fn esr_loss(h: &Signal, h_hat: &Signal) -> Result<f64> {
    check_pair(h, h_hat)?;
    let denom = h.energy();
    if denom == 0.0 {
        return Err(Error::DegenerateSignal(
            "reference signal has zero energy".into(),
        ));
    }
    let num: f64 = h
        .samples()
        .iter()
        .zip(h_hat.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(num / denom)
}
