//! Similarity metrics for the late reverberation of room impulse responses.
//!
//! The crate provides two averaged-statistics metrics (power convergence
//! over smoothed spectrograms, per-band energy decay convergence) and two
//! baselines (multi-scale spectral loss, error-to-signal ratio), together
//! with the preprocessing pipeline that isolates late reverberation and an
//! objective-evaluation protocol: pairwise matrices over sampled corpus
//! subsets, standardization, median aggregation by panel-count partition or
//! microphone position, and a gradual-difference sweep around a target
//! response.
//!
//! All computations are deterministic: randomness flows from caller-supplied
//! seeds through ChaCha8 generators, and parallel pair evaluation is
//! followed by a canonical sort.

pub mod dataset;
pub mod digest;
pub mod dsp;
pub mod error;
pub mod evaluation;
pub mod metrics;
pub mod preprocess;
pub mod signal;

pub use error::{Error, Result};
pub use signal::Signal;
