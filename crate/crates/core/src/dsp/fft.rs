//! Discrete Fourier transform.
//!
//! Power-of-two lengths use an iterative radix-2 Cooley-Tukey kernel; every
//! other length goes through Bluestein's chirp-z reformulation on top of it,
//! so `dft_forward` is exact (up to rounding) for any N.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, VibroError};

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub bins: Vec<Complex64>,
    /// Sampling rate of the time-domain series, Hz.
    pub sample_rate: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Frequency of bin `k` in Hz.
    pub fn frequency(&self, k: usize) -> f64 {
        k as f64 * self.sample_rate / self.bins.len() as f64
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.bins.iter().map(|c| c.norm()).collect()
    }

    pub fn inverse(&self) -> Vec<Complex64> {
        idft(&self.bins)
    }

    /// Real part of the inverse transform.
    pub fn inverse_real(&self) -> Vec<f64> {
        self.inverse().into_iter().map(|c| c.re).collect()
    }
}

/// `X[k] = Σ_n x[n] e^{-2πi kn/N}` of a real series with unit sample rate.
pub fn dft_forward(x: &[f64]) -> Result<Spectrum> {
    dft_forward_with_rate(x, 1.0)
}

pub fn dft_forward_with_rate(x: &[f64], sample_rate: f64) -> Result<Spectrum> {
    if x.is_empty() {
        return Err(VibroError::InvalidArgument("DFT of an empty series".into()));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(VibroError::NonFinite(i));
    }
    let input: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Ok(Spectrum { bins: dft(&input), sample_rate })
}

/// Forward transform of a complex sequence of any length.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    if n <= 1 {
        return x.to_vec();
    }
    if n.is_power_of_two() {
        let mut buf = x.to_vec();
        radix2_in_place(&mut buf, false);
        buf
    } else {
        bluestein(x)
    }
}

/// Inverse transform including the 1/N factor.
pub fn idft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    // IDFT(X) = conj(DFT(conj(X))) / N
    let conj: Vec<Complex64> = x.iter().map(|c| c.conj()).collect();
    let scale = 1.0 / n as f64;
    dft(&conj).into_iter().map(|c| c.conj() * scale).collect()
}

fn twiddle(k: usize, n: usize, inverse: bool) -> Complex64 {
    let sign = if inverse { 1.0 } else { -1.0 };
    Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64)
}

fn radix2_in_place(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let twiddles: Vec<Complex64> = (0..n / 2).map(|k| twiddle(k, n, inverse)).collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();
    // chirp[k] = e^{-πi k²/N}; k² is reduced mod 2N to keep the angle small.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128 % (2 * n as u128)) as f64;
            Complex64::from_polar(1.0, -PI * k2 / n as f64)
        })
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = x[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2_in_place(&mut a, false);
    radix2_in_place(&mut b, false);
    for (ai, bi) in a.iter_mut().zip(&b) {
        *ai *= bi;
    }
    radix2_in_place(&mut a, true);
    let scale = 1.0 / m as f64;
    (0..n).map(|k| a[k] * scale * chirp[k]).collect()
}

/// Frequency-domain feature channel of length `x.len()`.
///
/// The series is zero-padded to the next power of two, the magnitudes of
/// the non-negative-frequency bins are max-normalized and then linearly
/// resampled back to the input length. Output sample `i` sits at
/// `i / (2T)` cycles per sample, so for power-of-two `T` every even output
/// index lands exactly on a bin.
pub fn fft_feature_channel(x: &[f64]) -> Result<Vec<f64>> {
    let t = x.len();
    if t < 2 {
        return Err(VibroError::InvalidArgument(format!("feature channel needs length >= 2, got {t}")));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(VibroError::NonFinite(i));
    }
    let padded_len = t.next_power_of_two();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(padded_len, Complex64::new(0.0, 0.0));
    radix2_in_place(&mut buf, false);
    let bins = padded_len / 2 + 1;
    let mags: Vec<f64> = buf[..bins].iter().map(|c| c.norm()).collect();
    let peak = mags.iter().fold(0.0_f64, |m, &v| m.max(v));
    if peak == 0.0 {
        return Ok(vec![0.0; t]);
    }
    let norm: Vec<f64> = mags.iter().map(|m| m / peak).collect();
    let scale = (bins - 1) as f64 / t as f64;
    Ok(interpolate_at(&norm, (0..t).map(|i| i as f64 * scale)))
}

/// Linear resampling onto `len` points spanning the same support.
pub fn resample_linear(values: &[f64], len: usize) -> Vec<f64> {
    let n = values.len();
    if len == 0 || n == 0 {
        return vec![0.0; len];
    }
    if n == 1 || len == 1 {
        return vec![values[0]; len];
    }
    if n == len {
        return values.to_vec();
    }
    let scale = (n - 1) as f64 / (len - 1) as f64;
    interpolate_at(values, (0..len).map(|i| i as f64 * scale))
}

fn interpolate_at(values: &[f64], positions: impl Iterator<Item = f64>) -> Vec<f64> {
    let n = values.len();
    positions
        .map(|pos| {
            let lo = (pos.floor() as usize).min(n - 1);
            let hi = (lo + 1).min(n - 1);
            let frac = pos - lo as f64;
            values[lo] + (values[hi] - values[lo]) * frac
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, re: f64, im: f64) {
        assert!((a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12, "{a} vs {re}+{im}i");
    }

    #[test]
    fn dc_only_signal() {
        let s = dft_forward(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_close(s.bins[0], 4.0, 0.0);
        for k in 1..4 {
            assert_close(s.bins[k], 0.0, 0.0);
        }
    }

    #[test]
    fn unit_impulse_is_flat() {
        for n in [4, 5, 12] {
            let mut x = vec![0.0; n];
            x[0] = 1.0;
            for b in dft_forward(&x).unwrap().bins {
                assert_close(b, 1.0, 0.0);
            }
        }
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(dft_forward(&[]).is_err());
        assert!(matches!(dft_forward(&[0.0, f64::NAN]), Err(VibroError::NonFinite(1))));
    }

    #[test]
    fn single_tone_peaks_at_one() {
        let n = 64;
        let x: Vec<f64> = (0..n).map(|i| (2.0 * PI * 5.0 * i as f64 / n as f64).sin()).collect();
        let ch = fft_feature_channel(&x).unwrap();
        let peak = ch.iter().cloned().fold(f64::MIN, f64::max);
        assert!((peak - 1.0).abs() < 1e-12);
        assert!((ch[10] - 1.0).abs() < 1e-12);
        let big = ch.iter().filter(|&&v| v > 0.5).count();
        assert!(big <= 3, "{big} large samples");
    }

    #[test]
    fn zero_signal_gives_zero_channel() {
        assert_eq!(fft_feature_channel(&[0.0; 500]).unwrap(), vec![0.0; 500]);
    }

    #[test]
    fn resample_endpoints_preserved() {
        let r = resample_linear(&[0.0, 1.0, 4.0], 5);
        assert_eq!(r, vec![0.0, 0.5, 1.0, 2.5, 4.0]);
    }
}
