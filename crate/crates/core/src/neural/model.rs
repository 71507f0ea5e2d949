//! The hybrid stacking ensemble: per-channel BiLSTM and CNN branches feeding
//! a three-layer fully connected head.
//!
//! The LSTM branch embedding of a channel is `[mean_t out_t, h_fwd(T-1),
//! h_bwd(0)]` (width 4H). The CNN embedding is the flattened output of the
//! last pooling layer. The head input concatenates `[lstm_s, cnn_s]` for
//! every channel `s` in order.

use serde::{Deserialize, Serialize};

use super::config::{LossWeights, ModelConfig, CNN_INPUTS, LSTM_INPUTS};
use super::lstm::{dir_backward, dir_forward, dropout_mask, DirCache};
use super::ops::{conv_bwd, conv_fwd, dense_bwd, dense_fwd, pool_bwd, pool_fwd, Activation};
use super::params::{ModelParams, ParamGroup};
use crate::dsp::FeatureBundle;
use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Eval,
    /// Dropout masks derive from `(seed, iteration, record id, channel)`.
    Train { seed: u64, iteration: u64 },
}

struct ConvCache {
    patches: Vec<f64>,
    /// Post-ReLU activation.
    act: Vec<f64>,
    arg: Vec<u32>,
}

struct SignalCache {
    x_lstm: Vec<f64>,
    dirs: [DirCache; 2],
    mask: Option<Vec<f64>>,
    convs: Vec<ConvCache>,
}

/// Everything the backward pass needs for one chunk of records.
pub(crate) struct ChunkCache {
    batch: usize,
    signals: Vec<SignalCache>,
    head_in: Vec<f64>,
    a1: Vec<f64>,
    a2: Vec<f64>,
    /// Output, `T × B`.
    pub y: Vec<f64>,
}

impl ChunkCache {
    /// LSTM embedding rows of channel `s`, `4H × B`.
    pub(crate) fn lstm_embedding(&self, cfg: &ModelConfig, s: usize) -> &[f64] {
        let start = s * cfg.signal_embedding() * self.batch;
        &self.head_in[start..start + cfg.lstm_embedding() * self.batch]
    }

    pub(crate) fn cnn_embedding(&self, cfg: &ModelConfig, s: usize) -> &[f64] {
        let start = (s * cfg.signal_embedding() + cfg.lstm_embedding()) * self.batch;
        &self.head_in[start..start + cfg.cnn_embedding() * self.batch]
    }
}

fn check_inputs(cfg: &ModelConfig, records: &[&[FeatureBundle]]) -> Result<()> {
    for bundles in records {
        if bundles.len() != cfg.channel_count {
            return Err(VibroError::Shape(format!(
                "model expects {} feature bundles per record, got {}",
                cfg.channel_count,
                bundles.len()
            )));
        }
        for b in bundles.iter() {
            if b.len != cfg.series_length
                || b.lstm_input.len() != LSTM_INPUTS * b.len
                || b.cnn_input.len() != CNN_INPUTS * b.len
            {
                return Err(VibroError::Shape(format!(
                    "feature bundle of length {} does not match series length {}",
                    b.len, cfg.series_length
                )));
            }
        }
    }
    Ok(())
}

/// Forward pass over a chunk. `ids` key the dropout streams in train mode.
pub(crate) fn forward_chunk(params: &ModelParams, records: &[&[FeatureBundle]], ids: &[u64], mode: Mode) -> Result<ChunkCache> {
    let cfg = &params.config;
    check_inputs(cfg, records)?;
    let p = &params.values;
    let layout = &params.layout;
    let batch = records.len();
    let len = cfg.series_length;
    let tb = len * batch;
    let hid = cfg.lstm_hidden_size;
    let emb = cfg.signal_embedding();
    let mut head_in = vec![0.0; cfg.head_input() * batch];
    let mut signals = Vec::with_capacity(cfg.channel_count);

    for s in 0..cfg.channel_count {
        // LSTM branch.
        let mut x_lstm = vec![0.0; LSTM_INPUTS * tb];
        for (b, bundles) in records.iter().enumerate() {
            for i in 0..LSTM_INPUTS {
                let src = bundles[s].lstm_channel(i);
                for t in 0..len {
                    x_lstm[i * tb + t * batch + b] = src[t];
                }
            }
        }
        let [fo, bo] = layout.lstm_for(s);
        let fwd = dir_forward(p, fo, LSTM_INPUTS, hid, &x_lstm, len, batch, false);
        let bwd = dir_forward(p, bo, LSTM_INPUTS, hid, &x_lstm, len, batch, true);
        let mask = match mode {
            Mode::Train { seed, iteration } if cfg.dropout_rate > 0.0 => {
                let mut m = vec![0.0; 2 * hid * tb];
                for (b, &id) in ids.iter().enumerate() {
                    let mut rng = child_rng(seed, &[stream::DROPOUT, iteration, id, s as u64]);
                    let rec = dropout_mask(2 * hid, len, cfg.dropout_rate, &mut rng);
                    for r in 0..2 * hid {
                        for t in 0..len {
                            m[r * tb + t * batch + b] = rec[r * len + t];
                        }
                    }
                }
                Some(m)
            }
            _ => None,
        };
        let base = s * emb * batch;
        let out = |r: usize, k: usize| -> f64 {
            let v = if r < hid { fwd.h[r * tb + k] } else { bwd.h[(r - hid) * tb + k] };
            mask.as_ref().map_or(v, |m| v * m[r * tb + k])
        };
        for r in 0..2 * hid {
            for b in 0..batch {
                let mut sum = 0.0;
                for t in 0..len {
                    sum += out(r, t * batch + b);
                }
                head_in[base + r * batch + b] = sum / len as f64;
            }
        }
        for r in 0..hid {
            for b in 0..batch {
                head_in[base + (2 * hid + r) * batch + b] = out(r, (len - 1) * batch + b);
                head_in[base + (3 * hid + r) * batch + b] = out(hid + r, b);
            }
        }

        // CNN branch.
        let mut x = vec![0.0; CNN_INPUTS * tb];
        for (b, bundles) in records.iter().enumerate() {
            for c in 0..CNN_INPUTS {
                x[c * tb + b * len..c * tb + (b + 1) * len].copy_from_slice(bundles[s].cnn_channel(c));
            }
        }
        let mut cur_len = len;
        let mut convs = Vec::new();
        for l in layout.cnn_for(s) {
            let (mut act, patches) =
                conv_fwd(&x, l.cin, batch, cur_len, &p[l.w..l.w + l.cout * l.cin * l.kernel], &p[l.b..l.b + l.cout], l.kernel);
            act.iter_mut().for_each(|v| *v = v.max(0.0));
            let (pooled, arg) = pool_fwd(&act, l.cout, batch, cur_len, l.pool);
            cur_len = super::ops::pooled_len(cur_len, l.pool);
            convs.push(ConvCache { patches, act, arg });
            x = pooled;
        }
        let cout = layout.cnn_for(s).last().map_or(0, |l| l.cout);
        let cbase = base + cfg.lstm_embedding() * batch;
        for c in 0..cout {
            for b in 0..batch {
                for t in 0..cur_len {
                    head_in[cbase + (c * cur_len + t) * batch + b] = x[c * batch * cur_len + b * cur_len + t];
                }
            }
        }
        signals.push(SignalCache { x_lstm, dirs: [fwd, bwd], mask, convs });
    }

    let [d0, d1, d2] = layout.head;
    let a1 = dense_fwd(&head_in, batch, &p[d0.w..d0.w + d0.fout * d0.fin], &p[d0.b..d0.b + d0.fout], Activation::Relu);
    let a2 = dense_fwd(&a1, batch, &p[d1.w..d1.w + d1.fout * d1.fin], &p[d1.b..d1.b + d1.fout], Activation::Relu);
    let y = dense_fwd(&a2, batch, &p[d2.w..d2.w + d2.fout * d2.fin], &p[d2.b..d2.b + d2.fout], Activation::Linear);
    if y.iter().any(|v| !v.is_finite()) {
        return Err(VibroError::NonFiniteActivation("model output"));
    }
    Ok(ChunkCache { batch, signals, head_in, a1, a2, y })
}

/// Backward pass. `dy` is `T × B`; `d_lstm_emb[s]` optionally adds a
/// gradient (`4H × B`) on channel `s`'s LSTM embedding. Gradients are
/// accumulated into `grad`.
pub(crate) fn backward_chunk(
    params: &ModelParams,
    cache: &ChunkCache,
    mut dy: Vec<f64>,
    d_lstm_emb: Option<&[Vec<f64>]>,
    grad: &mut [f64],
) {
    let cfg = &params.config;
    let p = &params.values;
    let layout = &params.layout;
    let batch = cache.batch;
    let len = cfg.series_length;
    let tb = len * batch;
    let hid = cfg.lstm_hidden_size;
    let emb = cfg.signal_embedding();

    let [d0, d1, d2] = layout.head;
    let mut da2 = {
        let (dw, db) = split_wb(grad, d2.w, d2.fout * d2.fin, d2.b, d2.fout);
        dense_bwd(&cache.a2, batch, &p[d2.w..d2.w + d2.fout * d2.fin], &cache.y, Activation::Linear, &mut dy, dw, db, true)
            .unwrap()
    };
    let mut da1 = {
        let (dw, db) = split_wb(grad, d1.w, d1.fout * d1.fin, d1.b, d1.fout);
        dense_bwd(&cache.a1, batch, &p[d1.w..d1.w + d1.fout * d1.fin], &cache.a2, Activation::Relu, &mut da2, dw, db, true)
            .unwrap()
    };
    let mut d_in = {
        let (dw, db) = split_wb(grad, d0.w, d0.fout * d0.fin, d0.b, d0.fout);
        dense_bwd(&cache.head_in, batch, &p[d0.w..d0.w + d0.fout * d0.fin], &cache.a1, Activation::Relu, &mut da1, dw, db, true)
            .unwrap()
    };

    for (s, sc) in cache.signals.iter().enumerate() {
        let base = s * emb * batch;
        if let Some(extra) = d_lstm_emb {
            for (g, e) in d_in[base..base + cfg.lstm_embedding() * batch].iter_mut().zip(&extra[s]) {
                *g += e;
            }
        }
        let de = &d_in[base..base + emb * batch];

        // CNN branch.
        let convs = layout.cnn_for(s);
        let lens = cfg.cnn_lengths();
        let last = convs.len() - 1;
        let out_len = lens[convs.len()];
        let cout = convs[last].cout;
        let cbase = cfg.lstm_embedding() * batch;
        let mut dx = vec![0.0; cout * batch * out_len];
        for c in 0..cout {
            for b in 0..batch {
                for t in 0..out_len {
                    dx[c * batch * out_len + b * out_len + t] = de[cbase + (c * out_len + t) * batch + b];
                }
            }
        }
        for (li, l) in convs.iter().enumerate().rev() {
            let cc = &sc.convs[li];
            let mut dact = pool_bwd(&dx, &cc.arg, cc.act.len());
            for (g, &a) in dact.iter_mut().zip(&cc.act) {
                if a <= 0.0 {
                    *g = 0.0;
                }
            }
            let (dw, db) = split_wb(grad, l.w, l.cout * l.cin * l.kernel, l.b, l.cout);
            let w = &p[l.w..l.w + l.cout * l.cin * l.kernel];
            match conv_bwd(&cc.patches, l.cin, batch, lens[li], w, l.kernel, &dact, dw, db, li > 0) {
                Some(next) => dx = next,
                None => break,
            }
        }

        // LSTM branch.
        let mut dout = vec![0.0; 2 * hid * tb];
        let inv = 1.0 / len as f64;
        for r in 0..2 * hid {
            for b in 0..batch {
                let g = de[r * batch + b] * inv;
                for t in 0..len {
                    dout[r * tb + t * batch + b] = g;
                }
            }
        }
        for r in 0..hid {
            for b in 0..batch {
                dout[r * tb + (len - 1) * batch + b] += de[(2 * hid + r) * batch + b];
                dout[(hid + r) * tb + b] += de[(3 * hid + r) * batch + b];
            }
        }
        if let Some(m) = &sc.mask {
            dout.iter_mut().zip(m).for_each(|(g, k)| *g *= k);
        }
        let [fo, bo] = layout.lstm_for(s);
        let (dh_f, dh_b) = dout.split_at(hid * tb);
        dir_backward(p, fo, LSTM_INPUTS, hid, &sc.x_lstm, len, batch, false, &sc.dirs[0], dh_f, grad);
        dir_backward(p, bo, LSTM_INPUTS, hid, &sc.x_lstm, len, batch, true, &sc.dirs[1], dh_b, grad);
    }
}

/// Disjoint mutable weight and bias gradient slices (weight block first).
fn split_wb(grad: &mut [f64], w: usize, wn: usize, b: usize, bn: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert!(w + wn <= b);
    let (lo, hi) = grad.split_at_mut(b);
    (&mut lo[w..w + wn], &mut hi[..bn])
}

/// Loss terms; `total` is their sum.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub data: f64,
    pub lstm_reg: f64,
    pub cnn_reg: f64,
    pub nn_reg: f64,
    pub pair: f64,
    pub total: f64,
}

impl LossBreakdown {
    pub fn terms(&self) -> [(&'static str, f64); 5] {
        [
            ("data", self.data),
            ("lstm_reg", self.lstm_reg),
            ("cnn_reg", self.cnn_reg),
            ("nn_reg", self.nn_reg),
            ("pair", self.pair),
        ]
    }

    fn finish(mut self) -> Self {
        self.total = self.data + self.lstm_reg + self.cnn_reg + self.nn_reg + self.pair;
        self
    }

    /// First non-finite term, if any.
    pub fn non_finite(&self) -> Option<&'static str> {
        self.terms().into_iter().find(|(_, v)| !v.is_finite()).map(|(n, _)| n)
    }
}

/// Regularizer terms `λ_g · mean(θ_g²)`; adds their gradient when given.
pub(crate) fn regularizers(params: &ModelParams, w: &LossWeights, grad: Option<&mut [f64]>) -> LossBreakdown {
    let lambda = |g| match g {
        ParamGroup::Lstm => w.lambda_lstm,
        ParamGroup::Cnn => w.lambda_cnn,
        ParamGroup::Nn => w.lambda_nn,
    };
    let mut out = LossBreakdown::default();
    let mut sums = [0.0; 3];
    for b in &params.layout.blocks {
        let idx = b.group as usize;
        sums[idx] += params.values[b.range()].iter().map(|v| v * v).sum::<f64>();
    }
    for (i, g) in [ParamGroup::Lstm, ParamGroup::Cnn, ParamGroup::Nn].into_iter().enumerate() {
        let n = params.layout.group_size(g).max(1) as f64;
        let v = lambda(g) * sums[i] / n;
        match g {
            ParamGroup::Lstm => out.lstm_reg = v,
            ParamGroup::Cnn => out.cnn_reg = v,
            ParamGroup::Nn => out.nn_reg = v,
        }
    }
    if let Some(grad) = grad {
        for b in &params.layout.blocks {
            let scale = 2.0 * lambda(b.group) / params.layout.group_size(b.group).max(1) as f64;
            if scale != 0.0 {
                for i in b.range() {
                    grad[i] += scale * params.values[i];
                }
            }
        }
    }
    out
}

/// Data and pairwise terms of a chunk, summed over its records and scaled by
/// `1/n_total`. Returns the breakdown (data, pair only), `dy` and the
/// embedding gradients.
pub(crate) fn chunk_loss(
    cfg: &ModelConfig,
    cache: &ChunkCache,
    clean: &[&[f64]],
    w: &LossWeights,
    n_total: usize,
) -> (LossBreakdown, Vec<f64>, Vec<Vec<f64>>) {
    let batch = cache.batch;
    let len = cfg.series_length;
    let scale = 1.0 / n_total as f64;
    let mut dy = vec![0.0; len * batch];
    let mut data = 0.0;
    for (b, target) in clean.iter().enumerate() {
        let mut sq = 0.0;
        for t in 0..len {
            let r = cache.y[t * batch + b] - target[t];
            sq += r * r;
            dy[t * batch + b] = 2.0 * r / len as f64 * scale;
        }
        data += sq / len as f64;
    }
    let m = cfg.channel_count;
    let k = cfg.lstm_embedding();
    let mut pair = 0.0;
    let mut de = vec![vec![0.0; k * batch]; m];
    if m > 1 {
        let embs: Vec<&[f64]> = (0..m).map(|s| cache.lstm_embedding(cfg, s)).collect();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                for idx in 0..k * batch {
                    let d = embs[i][idx] - embs[j][idx];
                    pair += d * d / k as f64;
                    // Each ordered pair contributes to both endpoints.
                    de[i][idx] += 2.0 * w.lambda_pair * d / k as f64 * scale;
                    de[j][idx] -= 2.0 * w.lambda_pair * d / k as f64 * scale;
                }
            }
        }
    }
    let out = LossBreakdown { data: data * scale, pair: w.lambda_pair * pair * scale, ..LossBreakdown::default() };
    (out, dy, de)
}

/// Output of [`model_forward`] for one record.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardOutput {
    pub y_hat: Vec<f64>,
    /// LSTM branch embedding per channel.
    pub lstm_embeddings: Vec<Vec<f64>>,
    /// CNN branch embedding per channel.
    pub cnn_embeddings: Vec<Vec<f64>>,
}

fn column(data: &[f64], rows: usize, batch: usize, b: usize) -> Vec<f64> {
    (0..rows).map(|r| data[r * batch + b]).collect()
}

/// Runs the model on the `m` feature bundles of one record. `record_id`
/// selects the dropout stream in train mode.
pub fn model_forward(bundles: &[FeatureBundle], params: &ModelParams, mode: Mode, record_id: u64) -> Result<ForwardOutput> {
    let cache = forward_chunk(params, &[bundles], &[record_id], mode)?;
    let cfg = &params.config;
    Ok(ForwardOutput {
        y_hat: cache.y.clone(),
        lstm_embeddings: (0..cfg.channel_count).map(|s| column(cache.lstm_embedding(cfg, s), cfg.lstm_embedding(), 1, 0)).collect(),
        cnn_embeddings: (0..cfg.channel_count).map(|s| column(cache.cnn_embedding(cfg, s), cfg.cnn_embedding(), 1, 0)).collect(),
    })
}

/// Full loss of a single record.
pub fn loss(
    y_hat: &[f64],
    clean: &[f64],
    params: &ModelParams,
    lstm_embeddings: &[Vec<f64>],
    weights: &LossWeights,
) -> Result<LossBreakdown> {
    weights.validate()?;
    if y_hat.len() != clean.len() || y_hat.is_empty() {
        return Err(VibroError::Shape(format!("prediction length {} != target length {}", y_hat.len(), clean.len())));
    }
    if lstm_embeddings.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(VibroError::Shape("LSTM embeddings differ in width".into()));
    }
    let data = y_hat.iter().zip(clean).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / y_hat.len() as f64;
    let mut pair = 0.0;
    for (i, ei) in lstm_embeddings.iter().enumerate() {
        for (j, ej) in lstm_embeddings.iter().enumerate() {
            if i != j && !ei.is_empty() {
                pair += ei.iter().zip(ej).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / ei.len() as f64;
            }
        }
    }
    let reg = regularizers(params, weights, None);
    Ok(LossBreakdown { data, pair: weights.lambda_pair * pair, ..reg }.finish())
}

/// Loss and gradient over a set of records, processed in fixed-size chunks
/// reduced in order. The mean is taken over all records.
pub fn loss_and_gradient(
    params: &ModelParams,
    records: &[&[FeatureBundle]],
    clean: &[&[f64]],
    ids: &[u64],
    weights: &LossWeights,
    mode: Mode,
    chunk_size: usize,
) -> Result<(LossBreakdown, Vec<f64>)> {
    use rayon::prelude::*;
    let n = records.len();
    if n == 0 || clean.len() != n || ids.len() != n {
        return Err(VibroError::Shape(format!(
            "need matching non-empty records/targets/ids, got {n}/{}/{}",
            clean.len(),
            ids.len()
        )));
    }
    let chunk = chunk_size.max(1);
    let starts: Vec<usize> = (0..n).step_by(chunk).collect();
    let parts: Vec<Result<(LossBreakdown, Vec<f64>)>> = starts
        .par_iter()
        .map(|&s| {
            let e = (s + chunk).min(n);
            let cache = forward_chunk(params, &records[s..e], &ids[s..e], mode)?;
            let (lb, dy, de) = chunk_loss(&params.config, &cache, &clean[s..e], weights, n);
            let mut g = vec![0.0; params.count()];
            backward_chunk(params, &cache, dy, Some(&de), &mut g);
            Ok((lb, g))
        })
        .collect();
    let mut grad = vec![0.0; params.count()];
    let mut total = regularizers(params, weights, Some(&mut grad));
    for part in parts {
        let (lb, g) = part?;
        total.data += lb.data;
        total.pair += lb.pair;
        grad.iter_mut().zip(&g).for_each(|(a, b)| *a += b);
    }
    Ok((total.finish(), grad))
}

/// Loss only (no gradient), same reduction as [`loss_and_gradient`].
pub fn batch_loss(
    params: &ModelParams,
    records: &[&[FeatureBundle]],
    clean: &[&[f64]],
    ids: &[u64],
    weights: &LossWeights,
    mode: Mode,
    chunk_size: usize,
) -> Result<LossBreakdown> {
    use rayon::prelude::*;
    let n = records.len();
    if n == 0 || clean.len() != n || ids.len() != n {
        return Err(VibroError::Shape("need matching non-empty records/targets/ids".into()));
    }
    let chunk = chunk_size.max(1);
    let starts: Vec<usize> = (0..n).step_by(chunk).collect();
    let parts: Vec<Result<LossBreakdown>> = starts
        .par_iter()
        .map(|&s| {
            let e = (s + chunk).min(n);
            let cache = forward_chunk(params, &records[s..e], &ids[s..e], mode)?;
            Ok(chunk_loss(&params.config, &cache, &clean[s..e], weights, n).0)
        })
        .collect();
    let mut total = regularizers(params, weights, None);
    for part in parts {
        let lb = part?;
        total.data += lb.data;
        total.pair += lb.pair;
    }
    Ok(total.finish())
}

/// Eval-mode predictions for many records, in input order.
pub fn predict(params: &ModelParams, records: &[&[FeatureBundle]], chunk_size: usize) -> Result<Vec<Vec<f64>>> {
    use rayon::prelude::*;
    let chunk = chunk_size.max(1);
    let len = params.config.series_length;
    let parts: Vec<Result<Vec<Vec<f64>>>> = records
        .par_chunks(chunk)
        .map(|c| {
            let ids = vec![0; c.len()];
            let cache = forward_chunk(params, c, &ids, Mode::Eval)?;
            Ok((0..c.len()).map(|b| column(&cache.y, len, c.len(), b)).collect())
        })
        .collect();
    let mut out = Vec::with_capacity(records.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
