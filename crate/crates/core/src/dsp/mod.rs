//! Signal-processing primitives shared by all metrics: windows, STFT,
//! strided smoothing, third-octave band filtering, and Schroeder
//! backward integration. Everything here is a pure function of its inputs.

pub mod bands;
pub mod conv;
mod fft;
pub mod stft;
pub mod window;

pub mod edc;

pub use bands::{band_edges, band_split, bandpass, third_octave_centers, BandSet};
pub use conv::conv2d_strided;
pub use edc::{edc_curves, edc_to_db_normalized, schroeder_edc, EdcCurves, DEFAULT_FLOOR_DB};
pub use stft::{magnitude_spectrogram, power_spectrogram, stft, stft_with_fft, Spectrogram};
pub use window::{hann_kernel_2d, hann_window};
