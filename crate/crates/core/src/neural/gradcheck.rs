//! Analytic-versus-numeric gradient comparison.
//!
//! Error per parameter block is `‖g_a − g_n‖ / max(‖g_a‖, ‖g_n‖)` with
//! central differences at step `1e-5`. Blocks whose two gradients are both
//! exactly zero have no defined error and are flagged not applicable.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::config::{LossWeights, ModelConfig};
use super::model::{batch_loss, loss_and_gradient, Mode};
use super::ops::{dense_bwd, dense_fwd, Activation};
use super::params::ModelParams;
use crate::dsp::{build_feature_bundle, FeatureBundle, WaveletChannelConfig};
use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, stream};

pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockError {
    pub name: String,
    pub rel_error: Option<f64>,
    pub max_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradCheckReport {
    pub blocks: Vec<BlockError>,
    pub max_rel_error: Option<f64>,
    /// False when no block had a non-zero gradient to compare.
    pub applicable: bool,
}

impl GradCheckReport {
    fn from_blocks(blocks: Vec<BlockError>) -> Self {
        let max_rel_error = blocks.iter().filter_map(|b| b.rel_error).reduce(f64::max);
        GradCheckReport { applicable: max_rel_error.is_some(), max_rel_error, blocks }
    }
}

fn compare(name: &str, analytic: &[f64], numeric: &[f64]) -> BlockError {
    let norm = |v: &mut dyn Iterator<Item = f64>| v.map(|x| x * x).sum::<f64>().sqrt();
    let diff = norm(&mut analytic.iter().zip(numeric).map(|(a, n)| a - n));
    let scale = norm(&mut analytic.iter().copied()).max(norm(&mut numeric.iter().copied()));
    BlockError {
        name: name.to_string(),
        rel_error: (scale > 0.0).then(|| diff / scale),
        max_abs_error: analytic.iter().zip(numeric).map(|(a, n)| (a - n).abs()).fold(0.0, f64::max),
    }
}

fn central_difference(values: &mut [f64], i: usize, f: &mut dyn FnMut(&[f64]) -> Result<f64>) -> Result<f64> {
    let orig = values[i];
    values[i] = orig + FD_STEP;
    let plus = f(values)?;
    values[i] = orig - FD_STEP;
    let minus = f(values)?;
    values[i] = orig;
    Ok((plus - minus) / (2.0 * FD_STEP))
}

/// Random two-record problem for a small model.
fn toy_problem(cfg: &ModelConfig, seed: u64) -> Result<(Vec<Vec<FeatureBundle>>, Vec<Vec<f64>>)> {
    let mut rng = child_rng(seed, &[stream::RECORD]);
    let wavelet = WaveletChannelConfig::default();
    let mut bundles = Vec::new();
    let mut clean = Vec::new();
    for _ in 0..2 {
        let c: Vec<f64> = (0..cfg.series_length).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut rec = Vec::new();
        for _ in 0..cfg.channel_count {
            let noisy: Vec<f64> = c.iter().map(|v| v + 0.1 * rng.sample::<f64, _>(StandardNormal)).collect();
            rec.push(build_feature_bundle(&noisy, &wavelet)?);
        }
        bundles.push(rec);
        clean.push(c);
    }
    Ok((bundles, clean))
}

/// Checks every parameter block of the full model loss on a random
/// two-record batch, in train mode with a fixed dropout draw.
pub fn grad_check(cfg: &ModelConfig, seed: u64) -> Result<GradCheckReport> {
    if cfg.series_length > 16 || cfg.lstm_hidden_size > 8 {
        return Err(VibroError::InvalidArgument(format!(
            "grad_check needs T <= 16 and hidden <= 8, got T={} hidden={}",
            cfg.series_length, cfg.lstm_hidden_size
        )));
    }
    let mut params = ModelParams::init(cfg, seed)?;
    let mut rng = child_rng(seed, &[stream::INIT, 1]);
    for b in params.layout.blocks.clone() {
        if b.fan_in.is_none() {
            for v in &mut params.values[b.range()] {
                *v = rng.gen_range(-0.1..0.1);
            }
        }
    }
    let (bundles, clean) = toy_problem(cfg, seed)?;
    let weights = LossWeights { lambda_lstm: 0.01, lambda_cnn: 0.02, lambda_nn: 0.03, lambda_pair: 0.05 };
    check_params(&mut params, &bundles, &clean, &weights, Mode::Train { seed, iteration: 1 })
}

/// Same comparison for caller-supplied parameters and data.
pub fn check_params(
    params: &mut ModelParams,
    bundles: &[Vec<FeatureBundle>],
    clean: &[Vec<f64>],
    weights: &LossWeights,
    mode: Mode,
) -> Result<GradCheckReport> {
    let recs: Vec<&[FeatureBundle]> = bundles.iter().map(Vec::as_slice).collect();
    let targets: Vec<&[f64]> = clean.iter().map(Vec::as_slice).collect();
    let ids: Vec<u64> = (0..recs.len() as u64).collect();
    let (_, analytic) = loss_and_gradient(params, &recs, &targets, &ids, weights, mode, 1)?;
    let layout = params.layout.clone();
    let config = params.config.clone();
    let mut values = std::mem::take(&mut params.values);
    let mut f = |v: &[f64]| -> Result<f64> {
        let p = ModelParams::from_values(&config, v.to_vec())?;
        Ok(batch_loss(&p, &recs, &targets, &ids, weights, mode, 1)?.total)
    };
    let mut blocks = Vec::new();
    for block in &layout.blocks {
        let mut numeric = Vec::with_capacity(block.size());
        for i in block.range() {
            numeric.push(central_difference(&mut values, i, &mut f)?);
        }
        blocks.push(compare(&block.name, &analytic[block.range()], &numeric));
    }
    params.values = values;
    Ok(GradCheckReport::from_blocks(blocks))
}

/// Gradient check of a stand-alone fully connected stack (ReLU hidden
/// layers, linear output) under a mean-squared loss.
pub fn dense_grad_check(widths: &[usize], seed: u64) -> Result<GradCheckReport> {
    if widths.len() < 2 || widths.contains(&0) {
        return Err(VibroError::InvalidArgument("need at least input and output widths, all >= 1".into()));
    }
    let batch = 3;
    let mut rng = child_rng(seed, &[stream::INIT]);
    let mut ranges = Vec::new();
    let mut values = Vec::new();
    for (l, w) in widths.windows(2).enumerate() {
        let start = values.len();
        let bound = 1.0 / (w[0] as f64).sqrt();
        values.extend((0..w[0] * w[1]).map(|_| rng.gen_range(-bound..bound)));
        ranges.push((format!("fc{l}.weight"), start..values.len()));
        let bstart = values.len();
        values.extend((0..w[1]).map(|_| rng.gen_range(-0.1..0.1)));
        ranges.push((format!("fc{l}.bias"), bstart..values.len()));
    }
    let x: Vec<f64> = (0..widths[0] * batch).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let out = *widths.last().unwrap();
    let target: Vec<f64> = (0..out * batch).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let layers = widths.len() - 1;
    let act = |l: usize| if l + 1 == layers { Activation::Linear } else { Activation::Relu };

    let forward = |v: &[f64]| -> Vec<Vec<f64>> {
        let mut acts = vec![x.clone()];
        for l in 0..layers {
            let (w, b) = (&v[ranges[2 * l].1.clone()], &v[ranges[2 * l + 1].1.clone()]);
            let y = dense_fwd(acts.last().unwrap(), batch, w, b, act(l));
            acts.push(y);
        }
        acts
    };
    let loss_of = |y: &[f64]| y.iter().zip(&target).map(|(a, t)| (a - t) * (a - t)).sum::<f64>() / y.len() as f64;

    let acts = forward(&values);
    let mut grad = vec![0.0; values.len()];
    let y = acts.last().unwrap();
    let mut dy: Vec<f64> = y.iter().zip(&target).map(|(a, t)| 2.0 * (a - t) / y.len() as f64).collect();
    for l in (0..layers).rev() {
        let (wr, br) = (ranges[2 * l].1.clone(), ranges[2 * l + 1].1.clone());
        let mut dw = vec![0.0; wr.len()];
        let mut db = vec![0.0; br.len()];
        let dx = dense_bwd(&acts[l], batch, &values[wr.clone()], &acts[l + 1], act(l), &mut dy, &mut dw, &mut db, l > 0);
        grad[wr].copy_from_slice(&dw);
        grad[br].copy_from_slice(&db);
        if let Some(dx) = dx {
            dy = dx;
        }
    }
    let mut f = |v: &[f64]| -> Result<f64> { Ok(loss_of(forward(v).last().unwrap())) };
    let mut blocks = Vec::new();
    for (name, r) in &ranges {
        let mut numeric = Vec::new();
        for i in r.clone() {
            numeric.push(central_difference(&mut values, i, &mut f)?);
        }
        blocks.push(compare(name, &grad[r.clone()], &numeric));
    }
    Ok(GradCheckReport::from_blocks(blocks))
}
