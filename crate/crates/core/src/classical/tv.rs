//! 1-D total-variation denoising by projected gradient on the dual.
//!
//! Solves `min_y ½‖y − x‖² + λ Σ|y[n+1] − y[n]|` through its dual
//! `min_{|p|≤1} ½‖x − λ Dᵀp‖²`, with `y = x − λ Dᵀp`.

use crate::error::{Result, VibroError};

#[derive(Debug, Clone, PartialEq)]
pub struct TvResult {
    pub signal: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Objective of the retained iterate after each iteration, when tracing
    /// was requested.
    pub objective_trace: Vec<f64>,
}

pub const DEFAULT_STEP: f64 = 0.25;

pub fn total_variation(y: &[f64]) -> f64 {
    y.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

pub fn tv_objective(y: &[f64], x: &[f64], weight: f64) -> f64 {
    0.5 * y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() + weight * total_variation(y)
}

fn primal(x: &[f64], p: &[f64], weight: f64, y: &mut [f64]) {
    let n = x.len();
    for i in 0..n {
        let left = if i > 0 { p[i - 1] } else { 0.0 };
        let right = if i + 1 < n { p[i] } else { 0.0 };
        // (Dᵀp)[i] = p[i-1] - p[i]
        y[i] = x[i] - weight * (left - right);
    }
}

pub fn tv_denoise(x: &[f64], weight: f64, max_iter: usize, tol: f64) -> Result<TvResult> {
    solve(x, weight, max_iter, tol, false)
}

/// Same as [`tv_denoise`] but records the objective of every iterate.
pub fn tv_denoise_traced(x: &[f64], weight: f64, max_iter: usize, tol: f64) -> Result<TvResult> {
    solve(x, weight, max_iter, tol, true)
}

fn solve(x: &[f64], weight: f64, max_iter: usize, tol: f64, trace: bool) -> Result<TvResult> {
    if !(weight >= 0.0) || !weight.is_finite() {
        return Err(VibroError::InvalidArgument(format!("TV weight must be >= 0, got {weight}")));
    }
    if max_iter == 0 {
        return Err(VibroError::InvalidArgument("max_iter must be >= 1".into()));
    }
    let n = x.len();
    if weight == 0.0 || n < 2 {
        return Ok(TvResult { signal: x.to_vec(), converged: true, iterations: 0, objective_trace: Vec::new() });
    }
    let mut p = vec![0.0; n - 1];
    let mut y = x.to_vec();
    // Dual iterates do not decrease the primal objective monotonically, so
    // the best primal point seen so far is the one returned.
    let mut best = x.to_vec();
    let mut best_obj = tv_objective(x, x, weight);
    let mut objective_trace = Vec::new();
    let step = DEFAULT_STEP / weight;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut delta: f64 = 0.0;
        for i in 0..n - 1 {
            let updated = (p[i] + step * (y[i + 1] - y[i])).clamp(-1.0, 1.0);
            delta = delta.max((updated - p[i]).abs());
            p[i] = updated;
        }
        primal(x, &p, weight, &mut y);
        let obj = tv_objective(&y, x, weight);
        if obj <= best_obj {
            best_obj = obj;
            best.copy_from_slice(&y);
        }
        if trace {
            objective_trace.push(best_obj);
        }
        if delta < tol {
            converged = true;
            break;
        }
    }
    Ok(TvResult { signal: best, converged, iterations, objective_trace })
}
