//! Adaptive local-statistics Wiener filter.

use crate::error::{Result, VibroError};

/// Window mean and population variance around every sample, with the
/// series mirrored (half-sample) beyond its ends.
pub fn local_moments(x: &[f64], window: usize) -> (Vec<f64>, Vec<f64>) {
    let n = x.len() as isize;
    let half = (window / 2) as isize;
    let at = |i: isize| {
        let r = i.rem_euclid(2 * n);
        x[if r < n { r } else { 2 * n - 1 - r } as usize]
    };
    let mut means = Vec::with_capacity(x.len());
    let mut vars = Vec::with_capacity(x.len());
    for i in 0..n {
        let vals = (i - half..=i + half).map(at);
        let mean = vals.clone().sum::<f64>() / window as f64;
        let var = vals.map(|v| (v - mean) * (v - mean)).sum::<f64>() / window as f64;
        means.push(mean);
        vars.push(var);
    }
    (means, vars)
}

/// `y = μ + max(σ² - ν², 0) / max(σ², ν²) · (x - μ)` per sample; `ν²`
/// defaults to the mean local variance.
pub fn wiener_denoise(x: &[f64], window: usize, noise_var: Option<f64>) -> Result<Vec<f64>> {
    if window < 3 || window % 2 == 0 {
        return Err(VibroError::InvalidArgument(format!("wiener window must be odd and >= 3, got {window}")));
    }
    if x.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(nv) = noise_var {
        if !(nv >= 0.0) || !nv.is_finite() {
            return Err(VibroError::InvalidArgument(format!("noise variance must be >= 0, got {nv}")));
        }
    }
    let (means, vars) = local_moments(x, window);
    let nu2 = noise_var.unwrap_or_else(|| vars.iter().sum::<f64>() / vars.len() as f64);
    Ok(x
        .iter()
        .zip(means.iter().zip(&vars))
        .map(|(&xi, (&mu, &s2))| {
            let denom = s2.max(nu2);
            let gain = if denom > 0.0 { (s2 - nu2).max(0.0) / denom } else { 1.0 };
            // Written as a shrink of x so that gain == 1 returns x exactly.
            xi - (1.0 - gain) * (xi - mu)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_unchanged() {
        assert_eq!(wiener_denoise(&[2.0; 9], 3, None).unwrap(), vec![2.0; 9]);
    }

    #[test]
    fn zero_noise_is_identity() {
        let x = [0.3, -1.0, 2.5, 0.0, 4.0, -0.5];
        assert_eq!(wiener_denoise(&x, 5, Some(0.0)).unwrap(), x.to_vec());
    }

    #[test]
    fn hand_case() {
        // x = [0, 1, 0], window 3, mirrored ends: windows [0,0,1], [0,1,0], [1,0,0].
        let y = wiener_denoise(&[0.0, 1.0, 0.0], 3, Some(1.0)).unwrap();
        let mu = 1.0 / 3.0;
        let s2 = ((0.0 - mu) * (0.0 - mu) * 2.0 + (1.0 - mu) * (1.0 - mu)) / 3.0;
        let gain = (s2 - 1.0_f64).max(0.0) / s2.max(1.0);
        let expect = [mu + gain * (0.0 - mu), mu + gain * (1.0 - mu), mu + gain * (0.0 - mu)];
        for (a, b) in y.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn even_window_rejected() {
        assert!(wiener_denoise(&[0.0; 5], 4, None).is_err());
        assert!(wiener_denoise(&[0.0; 5], 1, None).is_err());
    }
}
