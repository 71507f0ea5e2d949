//! Savitzky-Golay smoothing.

use nalgebra::DMatrix;

use crate::error::{Result, VibroError};

fn check(len: usize, window: usize, polyorder: usize) -> Result<()> {
    if window % 2 == 0 || window == 0 {
        return Err(VibroError::InvalidArgument(format!("savgol window must be odd, got {window}")));
    }
    if polyorder >= window {
        return Err(VibroError::InvalidArgument(format!(
            "savgol polyorder {polyorder} must be < window {window}"
        )));
    }
    if len < window {
        return Err(VibroError::InvalidArgument(format!("series length {len} shorter than window {window}")));
    }
    Ok(())
}

/// Least-squares projector of a centred window: row `j` maps window samples
/// to the coefficient of `z^j`, with offsets `z = -h..=h`.
fn fit_projector(window: usize, polyorder: usize) -> DMatrix<f64> {
    let half = (window / 2) as f64;
    let design = DMatrix::from_fn(window, polyorder + 1, |i, j| (i as f64 - half).powi(j as i32));
    design
        .svd(true, true)
        .pseudo_inverse(1e-12)
        .expect("SVD of a full-rank Vandermonde matrix")
}

fn evaluate_row(projector: &DMatrix<f64>, z: f64) -> Vec<f64> {
    let (terms, window) = projector.shape();
    (0..window).map(|i| (0..terms).map(|j| projector[(j, i)] * z.powi(j as i32)).sum()).collect()
}

/// Weights that produce the fitted value at the window centre.
pub fn savgol_coefficients(window: usize, polyorder: usize) -> Result<Vec<f64>> {
    check(window, window, polyorder)?;
    Ok(evaluate_row(&fit_projector(window, polyorder), 0.0))
}

/// Smooths `x` with a centred least-squares polynomial fit. The first and
/// last `window / 2` samples come from the polynomial fitted to the nearest
/// full window.
pub fn savgol_denoise(x: &[f64], window: usize, polyorder: usize) -> Result<Vec<f64>> {
    check(x.len(), window, polyorder)?;
    let n = x.len();
    let half = window / 2;
    let projector = fit_projector(window, polyorder);
    let center = evaluate_row(&projector, 0.0);
    let dot = |w: &[f64], start: usize| w.iter().zip(&x[start..start + window]).map(|(a, b)| a * b).sum::<f64>();

    let mut y = vec![0.0; n];
    for i in half..n - half {
        y[i] = dot(&center, i - half);
    }
    for i in 0..half {
        let lead = evaluate_row(&projector, i as f64 - half as f64);
        y[i] = dot(&lead, 0);
        let tail = evaluate_row(&projector, half as f64 - i as f64);
        y[n - 1 - i] = dot(&tail, n - window);
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_is_reproduced() {
        let x: Vec<f64> = (0..30).map(|n| 2.0 * (n * n) as f64 - n as f64 + 3.0).collect();
        let y = savgol_denoise(&x, 7, 2).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn constant_unchanged() {
        let y = savgol_denoise(&[4.5; 20], 11, 3).unwrap();
        assert!(y.iter().all(|v| (v - 4.5).abs() < 1e-12));
    }

    #[test]
    fn five_point_quadratic_kernel() {
        // Classic tabulated weights (-3, 12, 17, 12, -3) / 35.
        let c = savgol_coefficients(5, 2).unwrap();
        let expect = [-3.0, 12.0, 17.0, 12.0, -3.0].map(|v| v / 35.0);
        for (a, b) in c.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(savgol_denoise(&[0.0; 10], 4, 2).is_err());
        assert!(savgol_denoise(&[0.0; 10], 5, 5).is_err());
        assert!(savgol_denoise(&[0.0; 4], 5, 2).is_err());
    }
}
