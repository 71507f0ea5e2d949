//! Per-signal feature bundles for the hybrid model.

use serde::{Deserialize, Serialize};

use super::fft::fft_feature_channel;
use super::wavelet::{dwt, WaveletFamily, WaveletSpec};
use crate::error::{Result, VibroError};

/// Which transform feeds each of the three wavelet channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletChannelConfig {
    /// Level-1 detail of this spec forms channel 1.
    pub detail_a: WaveletSpec,
    /// Level-1 detail of this spec forms channel 2.
    pub detail_b: WaveletSpec,
    /// Approximation at the deepest level of this spec forms channel 3. The
    /// default single level keeps the band up to a quarter of the sample
    /// rate, where the second plate mode sits.
    pub approximation: WaveletSpec,
}

impl Default for WaveletChannelConfig {
    fn default() -> Self {
        Self {
            detail_a: WaveletSpec::new(WaveletFamily::Daubechies(4), 1),
            detail_b: WaveletSpec::new(WaveletFamily::Biorthogonal(2, 2), 1),
            approximation: WaveletSpec::new(WaveletFamily::Daubechies(4), 1),
        }
    }
}

/// Inputs of both branches for one noisy signal.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureBundle {
    /// 2×T, row-major: raw signal, then the FFT feature channel.
    pub lstm_input: Vec<f64>,
    /// 3×T, row-major wavelet channels.
    pub cnn_input: Vec<f64>,
    pub len: usize,
}

impl FeatureBundle {
    pub fn lstm_channel(&self, c: usize) -> &[f64] {
        &self.lstm_input[c * self.len..(c + 1) * self.len]
    }

    pub fn cnn_channel(&self, c: usize) -> &[f64] {
        &self.cnn_input[c * self.len..(c + 1) * self.len]
    }
}

/// Stretches `coeffs` onto `len` samples by sample-and-hold.
pub fn hold_upsample(coeffs: &[f64], len: usize) -> Vec<f64> {
    let m = coeffs.len();
    if m == 0 {
        return vec![0.0; len];
    }
    (0..len).map(|t| coeffs[t * m / len]).collect()
}

/// Three wavelet-domain channels, each of length `x.len()`, row-major.
pub fn wavelet_channels(x: &[f64], cfg: &WaveletChannelConfig) -> Result<Vec<f64>> {
    let t = x.len();
    if t < 8 {
        return Err(VibroError::InvalidArgument(format!("wavelet channels need length >= 8, got {t}")));
    }
    let first_detail = |spec: &WaveletSpec| -> Result<Vec<f64>> {
        let spec = WaveletSpec { levels: 1, ..*spec };
        Ok(dwt(x, &spec)?.details.swap_remove(0))
    };
    let da = first_detail(&cfg.detail_a)?;
    let db = first_detail(&cfg.detail_b)?;
    let approx = dwt(x, &cfg.approximation)?.approx;
    let mut out = Vec::with_capacity(3 * t);
    for c in [da, db, approx] {
        out.extend(hold_upsample(&c, t));
    }
    Ok(out)
}

pub fn build_feature_bundle(noisy: &[f64], cfg: &WaveletChannelConfig) -> Result<FeatureBundle> {
    if let Some(i) = noisy.iter().position(|v| !v.is_finite()) {
        return Err(VibroError::NonFinite(i));
    }
    let t = noisy.len();
    let mut lstm_input = Vec::with_capacity(2 * t);
    lstm_input.extend_from_slice(noisy);
    lstm_input.extend(fft_feature_channel(noisy)?);
    let cnn_input = wavelet_channels(noisy, cfg)?;
    Ok(FeatureBundle { lstm_input, cnn_input, len: t })
}
