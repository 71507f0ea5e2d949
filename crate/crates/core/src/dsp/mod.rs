//! Spectral and wavelet transforms, and the feature bundles built from them.

mod features;
mod fft;
mod filters;
mod wavelet;

pub use features::{build_feature_bundle, hold_upsample, wavelet_channels, FeatureBundle, WaveletChannelConfig};
pub use fft::{dft, dft_forward, dft_forward_with_rate, fft_feature_channel, idft, resample_linear, Spectrum};
pub use wavelet::{dwt, idwt, max_level, BoundaryMode, CoefficientPyramid, WaveletFamily, WaveletSpec};
