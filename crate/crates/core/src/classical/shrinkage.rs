//! Wavelet-shrinkage denoising.

use serde::{Deserialize, Serialize};

use crate::dsp::{dwt, idwt, WaveletSpec};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdRule {
    Soft,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    /// σ̂·√(2 ln T) with σ̂ = median|d₁| / 0.6745.
    Universal,
    Fixed(f64),
}

pub fn soft_threshold(c: f64, t: f64) -> f64 {
    c.signum() * (c.abs() - t).max(0.0)
}

pub fn hard_threshold(c: f64, t: f64) -> f64 {
    if c.abs() > t {
        c
    } else {
        0.0
    }
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Noise scale from the finest detail band.
pub fn mad_sigma(finest_detail: &[f64]) -> f64 {
    let mut abs: Vec<f64> = finest_detail.iter().map(|c| c.abs()).collect();
    median(&mut abs) / 0.6745
}

pub fn universal_threshold(finest_detail: &[f64], len: usize) -> f64 {
    mad_sigma(finest_detail) * (2.0 * (len as f64).ln()).sqrt()
}

pub fn wavelet_shrinkage_denoise(x: &[f64], spec: &WaveletSpec, rule: ThresholdRule, threshold: Threshold) -> Result<Vec<f64>> {
    let mut pyramid = dwt(x, spec)?;
    let t = match threshold {
        Threshold::Universal => universal_threshold(&pyramid.details[0], x.len()),
        Threshold::Fixed(t) => t.max(0.0),
    };
    if t > 0.0 {
        let shrink = match rule {
            ThresholdRule::Soft => soft_threshold,
            ThresholdRule::Hard => hard_threshold,
        };
        for band in &mut pyramid.details {
            band.iter_mut().for_each(|c| *c = shrink(*c, t));
        }
    }
    idwt(&pyramid, spec)
}
