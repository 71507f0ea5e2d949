//! Mini-batch training loop.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::adam::{adam_step, AdamConfig, AdamState};
use super::config::{LossWeights, ModelConfig, TrainConfig};
use super::model::{batch_loss, loss_and_gradient, LossBreakdown, Mode};
use super::params::ModelParams;
use crate::dsp::{build_feature_bundle, FeatureBundle, WaveletChannelConfig};
use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, stream};
use crate::synth::{inject_noise, SignalRecord};

/// Precomputed model inputs and targets.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    pub bundles: Vec<Vec<FeatureBundle>>,
    pub clean: Vec<Vec<f64>>,
    /// Stable record identifiers (dataset indices) keying random streams.
    pub ids: Vec<u64>,
    pub wavelet: WaveletChannelConfig,
}

impl TrainingSet {
    pub fn from_records(records: &[SignalRecord], ids: &[u64], wavelet: &WaveletChannelConfig) -> Result<Self> {
        if records.len() != ids.len() {
            return Err(VibroError::Shape(format!("{} records but {} ids", records.len(), ids.len())));
        }
        let bundles = records
            .par_iter()
            .map(|r| r.noisy.iter().map(|ch| build_feature_bundle(ch, wavelet)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(TrainingSet {
            bundles,
            clean: records.iter().map(|r| r.clean.clone()).collect(),
            ids: ids.to_vec(),
            wavelet: *wavelet,
        })
    }

    pub fn len(&self) -> usize {
        self.clean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clean.is_empty()
    }

    fn channel_count(&self) -> usize {
        self.bundles.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub iteration: usize,
    pub train: LossBreakdown,
    /// Validation data loss (eval mode), on validation iterations.
    pub validation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    pub iterations: Vec<IterationLog>,
    pub best_iteration: usize,
    pub best_validation: f64,
    pub stopped_early: bool,
}

impl TrainHistory {
    pub fn train_losses(&self) -> Vec<f64> {
        self.iterations.iter().map(|l| l.train.total).collect()
    }
}

fn check_finite(lb: &LossBreakdown, iteration: usize) -> Result<()> {
    match lb.non_finite() {
        Some(term) => Err(VibroError::NonFiniteLoss { iteration, term }),
        None => Ok(()),
    }
}

/// Validation loss: mean data term in eval mode.
pub fn validation_loss(params: &ModelParams, val: &TrainingSet, limit: Option<usize>, chunk: usize) -> Result<f64> {
    let n = limit.unwrap_or(val.len()).min(val.len());
    let recs: Vec<&[FeatureBundle]> = val.bundles[..n].iter().map(Vec::as_slice).collect();
    let clean: Vec<&[f64]> = val.clean[..n].iter().map(Vec::as_slice).collect();
    Ok(batch_loss(params, &recs, &clean, &val.ids[..n], &LossWeights::zero(), Mode::Eval, chunk)?.data)
}

/// Trains from a seeded initialization and returns the parameters with the
/// best validation loss.
pub fn train(
    train_set: &TrainingSet,
    val_set: &TrainingSet,
    model: &ModelConfig,
    cfg: &TrainConfig,
    weights: &LossWeights,
) -> Result<(ModelParams, TrainHistory)> {
    model.validate()?;
    cfg.validate()?;
    weights.validate()?;
    if train_set.is_empty() || val_set.is_empty() {
        return Err(VibroError::InvalidArgument("training and validation splits must be non-empty".into()));
    }
    for set in [train_set, val_set] {
        if set.channel_count() != model.channel_count {
            return Err(VibroError::Shape(format!(
                "model expects {} channels, data has {}",
                model.channel_count,
                set.channel_count()
            )));
        }
    }

    let mut params = ModelParams::init(model, cfg.seed)?;
    let adam = AdamConfig { beta1: cfg.beta1, beta2: cfg.beta2, epsilon: cfg.epsilon };
    let mut state = AdamState::new(params.count());
    let n = train_set.len();
    let batch = cfg.batch_size.min(n);

    let mut epoch = 0u64;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut child_rng(cfg.seed, &[stream::SHUFFLE, epoch]));
    let mut cursor = 0;

    let mut best = params.clone();
    let mut best_val = f64::INFINITY;
    let mut best_iteration = 0;
    let mut since_best = 0;
    let mut stopped_early = false;
    let mut log = Vec::with_capacity(cfg.max_iterations);

    for it in 1..=cfg.max_iterations {
        if cursor + batch > n {
            epoch += 1;
            order.shuffle(&mut child_rng(cfg.seed, &[stream::SHUFFLE, epoch]));
            cursor = 0;
        }
        let picked = &order[cursor..cursor + batch];
        cursor += batch;

        let augmented: Option<Vec<Vec<FeatureBundle>>> = if cfg.augment_noise {
            let (lo, hi) = cfg.augment_sigma;
            Some(
                picked
                    .par_iter()
                    .map(|&i| {
                        let mut rng = child_rng(cfg.seed, &[stream::AUGMENT, it as u64, train_set.ids[i]]);
                        let sigma = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
                        inject_noise(&train_set.clean[i], sigma, model.channel_count, &mut rng)?
                            .iter()
                            .map(|ch| build_feature_bundle(ch, &train_set.wavelet))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        let recs: Vec<&[FeatureBundle]> = match &augmented {
            Some(a) => a.iter().map(Vec::as_slice).collect(),
            None => picked.iter().map(|&i| train_set.bundles[i].as_slice()).collect(),
        };
        let clean: Vec<&[f64]> = picked.iter().map(|&i| train_set.clean[i].as_slice()).collect();
        let ids: Vec<u64> = picked.iter().map(|&i| train_set.ids[i]).collect();

        let mode = Mode::Train { seed: cfg.seed, iteration: it as u64 };
        let (lb, grad) = loss_and_gradient(&params, &recs, &clean, &ids, weights, mode, cfg.chunk_size)?;
        check_finite(&lb, it)?;
        adam_step(&mut params.values, &grad, &mut state, cfg.learning_rate, &adam)?;

        let validation = if it % cfg.validation_interval == 0 || it == cfg.max_iterations {
            let v = validation_loss(&params, val_set, cfg.validation_records, cfg.chunk_size)?;
            if !v.is_finite() {
                return Err(VibroError::NonFiniteLoss { iteration: it, term: "validation" });
            }
            log::info!("iter {it}: train {:.6} (data {:.6}) val {v:.6}", lb.total, lb.data);
            Some(v)
        } else {
            None
        };
        log.push(IterationLog { iteration: it, train: lb, validation });
        if let Some(v) = validation {
            if v < best_val {
                best_val = v;
                best_iteration = it;
                best.values.copy_from_slice(&params.values);
                since_best = 0;
            } else {
                since_best += 1;
                if cfg.patience > 0 && since_best >= cfg.patience {
                    stopped_early = true;
                    break;
                }
            }
        }
    }
    Ok((best, TrainHistory { iterations: log, best_iteration, best_validation: best_val, stopped_early }))
}
