//! Structural-vibration denoising benchmark.
//!
//! - [`synth`]: plate-dynamics signal synthesis and the dataset format
//! - [`dsp`]: FFT and discrete wavelet transforms, feature bundles
//! - [`classical`]: Savitzky-Golay, Wiener, total-variation and wavelet
//!   shrinkage baselines
//! - [`neural`]: the hybrid BiLSTM/CNN stacking ensemble with hand-written
//!   gradients
//! - [`metrics`]: PSNR, SNR, WMAPE and error quantiles
//! - [`bench`]: experiment configuration and the generate/train/denoise/compare
//!   pipeline

pub mod bench;
pub mod classical;
pub mod dsp;
pub mod error;
pub mod metrics;
pub mod neural;
pub mod seeding;
pub mod synth;

pub use error::{Result, VibroError};
