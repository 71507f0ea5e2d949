//! Bidirectional many-to-many LSTM.
//!
//! Gate rows are stacked `[input, forget, cell, output]`. Sequences are
//! stored feature-major with column `t·B + b`, so each time step is a
//! contiguous block of `B` columns.

use rand::Rng as _;

use super::ops::{gemm, sigmoid, View};
use super::params::DirOffsets;
use super::tensor::Tensor;
use crate::error::{Result, VibroError};
use crate::seeding::Rng;

pub(crate) struct DirCache {
    /// Activated gates, `4H × TB`.
    gates: Vec<f64>,
    c: Vec<f64>,
    tanh_c: Vec<f64>,
    pub h: Vec<f64>,
}

fn step_order(len: usize, reverse: bool) -> impl DoubleEndedIterator<Item = (usize, Option<usize>)> {
    (0..len).map(move |s| {
        if reverse {
            (len - 1 - s, (s > 0).then(|| len - s))
        } else {
            (s, s.checked_sub(1))
        }
    })
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn dir_forward(
    p: &[f64],
    off: DirOffsets,
    inp: usize,
    hid: usize,
    x: &[f64],
    len: usize,
    batch: usize,
    reverse: bool,
) -> DirCache {
    let g4 = 4 * hid;
    let tb = len * batch;
    let wx = &p[off.wx..off.wx + g4 * inp];
    let wh = &p[off.wh..off.wh + g4 * hid];
    let bias = &p[off.b..off.b + g4];
    let mut gates = vec![0.0; g4 * tb];
    for (row, &b) in gates.chunks_mut(tb).zip(bias) {
        row.fill(b);
    }
    gemm(g4, inp, tb, 1.0, wx, View::rm(inp), x, View::rm(tb), 1.0, &mut gates, View::rm(tb));
    let mut c = vec![0.0; hid * tb];
    let mut tanh_c = vec![0.0; hid * tb];
    let mut h = vec![0.0; hid * tb];
    for (t, prev) in step_order(len, reverse) {
        let col = t * batch;
        if let Some(tp) = prev {
            let hv = View { off: tp * batch, rs: tb, cs: 1 };
            gemm(g4, hid, batch, 1.0, wh, View::rm(hid), &h, hv, 1.0, &mut gates, View { off: col, rs: tb, cs: 1 });
        }
        for r in 0..hid {
            for b in 0..batch {
                let k = col + b;
                let i = sigmoid(gates[r * tb + k]);
                let f = sigmoid(gates[(hid + r) * tb + k]);
                let g = gates[(2 * hid + r) * tb + k].tanh();
                let o = sigmoid(gates[(3 * hid + r) * tb + k]);
                gates[r * tb + k] = i;
                gates[(hid + r) * tb + k] = f;
                gates[(2 * hid + r) * tb + k] = g;
                gates[(3 * hid + r) * tb + k] = o;
                let c_prev = prev.map_or(0.0, |tp| c[r * tb + tp * batch + b]);
                let cv = f * c_prev + i * g;
                let tc = cv.tanh();
                c[r * tb + k] = cv;
                tanh_c[r * tb + k] = tc;
                h[r * tb + k] = o * tc;
            }
        }
    }
    DirCache { gates, c, tanh_c, h }
}

/// Backpropagation through time for one direction. `dh` is `H × TB`;
/// parameter gradients are accumulated into `grad` at the same offsets.
#[allow(clippy::too_many_arguments)]
pub(crate) fn dir_backward(
    p: &[f64],
    off: DirOffsets,
    inp: usize,
    hid: usize,
    x: &[f64],
    len: usize,
    batch: usize,
    reverse: bool,
    cache: &DirCache,
    dh: &[f64],
    grad: &mut [f64],
) {
    let g4 = 4 * hid;
    let tb = len * batch;
    let wh = &p[off.wh..off.wh + g4 * hid];
    let DirCache { gates, c, tanh_c, h } = cache;
    let mut dz = vec![0.0; g4 * tb];
    let mut dh_next = vec![0.0; hid * batch];
    let mut dc_next = vec![0.0; hid * batch];
    for (t, prev) in step_order(len, reverse).rev() {
        let col = t * batch;
        for r in 0..hid {
            for b in 0..batch {
                let k = col + b;
                let i = gates[r * tb + k];
                let f = gates[(hid + r) * tb + k];
                let g = gates[(2 * hid + r) * tb + k];
                let o = gates[(3 * hid + r) * tb + k];
                let tc = tanh_c[r * tb + k];
                let c_prev = prev.map_or(0.0, |tp| c[r * tb + tp * batch + b]);
                let dht = dh[r * tb + k] + dh_next[r * batch + b];
                let d_o = dht * tc;
                let dc = dht * o * (1.0 - tc * tc) + dc_next[r * batch + b];
                dc_next[r * batch + b] = dc * f;
                dz[r * tb + k] = dc * g * i * (1.0 - i);
                dz[(hid + r) * tb + k] = dc * c_prev * f * (1.0 - f);
                dz[(2 * hid + r) * tb + k] = dc * i * (1.0 - g * g);
                dz[(3 * hid + r) * tb + k] = d_o * o * (1.0 - o);
            }
        }
        if prev.is_some() {
            let zv = View { off: col, rs: tb, cs: 1 };
            gemm(hid, g4, batch, 1.0, wh, View::tr(hid), &dz, zv, 0.0, &mut dh_next, View::rm(batch));
        }
    }
    let dwx = &mut grad[off.wx..off.wx + g4 * inp];
    gemm(g4, tb, inp, 1.0, &dz, View::rm(tb), x, View::tr(tb), 1.0, dwx, View::rm(inp));
    if len > 1 {
        // Step t pairs with h at t-1 (forward) or t+1 (backward).
        let (z_off, h_off) = if reverse { (0, batch) } else { (batch, 0) };
        let k = (len - 1) * batch;
        let zv = View { off: z_off, rs: tb, cs: 1 };
        let hv = View { off: h_off, rs: 1, cs: tb };
        let dwh = &mut grad[off.wh..off.wh + g4 * hid];
        gemm(g4, k, hid, 1.0, &dz, zv, h, hv, 1.0, dwh, View::rm(hid));
    }
    for (gb, row) in grad[off.b..off.b + g4].iter_mut().zip(dz.chunks(tb)) {
        *gb += row.iter().sum::<f64>();
    }
}

/// Inverted-dropout mask for one sequence, `rows × len`.
pub(crate) fn dropout_mask(rows: usize, len: usize, rate: f64, rng: &mut Rng) -> Vec<f64> {
    let keep = 1.0 / (1.0 - rate);
    (0..rows * len).map(|_| if rng.gen::<f64>() < rate { 0.0 } else { keep }).collect()
}

/// Standalone bidirectional LSTM with its own flat weights, laid out as
/// forward `(w_ih, w_hh, b)` then backward `(w_ih, w_hh, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiLstm {
    pub input: usize,
    pub hidden: usize,
    pub values: Vec<f64>,
}

impl BiLstm {
    pub fn param_count(input: usize, hidden: usize) -> usize {
        2 * (4 * hidden * (input + hidden + 1))
    }

    pub fn zeros(input: usize, hidden: usize) -> Self {
        BiLstm { input, hidden, values: vec![0.0; Self::param_count(input, hidden)] }
    }

    pub(crate) fn offsets(&self) -> [DirOffsets; 2] {
        let g4 = 4 * self.hidden;
        let per = g4 * (self.input + self.hidden + 1);
        let dir = |base: usize| DirOffsets { wx: base, wh: base + g4 * self.input, b: base + g4 * (self.input + self.hidden) };
        [dir(0), dir(per)]
    }

    fn check(&self, seq: &Tensor) -> Result<usize> {
        let (i, len) = seq.dims2()?;
        if i != self.input || len == 0 {
            return Err(VibroError::Shape(format!("expected {}×T input, got {:?}", self.input, seq.shape)));
        }
        Ok(len)
    }

    fn run(&self, seq: &Tensor, mask: Option<&[f64]>) -> Result<(Tensor, [DirCache; 2])> {
        let len = self.check(seq)?;
        let [f, b] = self.offsets();
        let fwd = dir_forward(&self.values, f, self.input, self.hidden, &seq.data, len, 1, false);
        let bwd = dir_forward(&self.values, b, self.input, self.hidden, &seq.data, len, 1, true);
        let h2 = 2 * self.hidden;
        let mut out = vec![0.0; len * h2];
        for t in 0..len {
            for r in 0..self.hidden {
                out[t * h2 + r] = fwd.h[r * len + t];
                out[t * h2 + self.hidden + r] = bwd.h[r * len + t];
            }
            if let Some(m) = mask {
                for r in 0..h2 {
                    out[t * h2 + r] *= m[r * len + t];
                }
            }
        }
        let out = Tensor::new(vec![len, h2], out)?;
        if !out.all_finite() {
            return Err(VibroError::NonFiniteActivation("bilstm output"));
        }
        Ok((out, [fwd, bwd]))
    }

    /// Per-step outputs `T × 2H`: forward then backward hidden state.
    pub fn forward(&self, seq: &Tensor) -> Result<Tensor> {
        Ok(self.run(seq, None)?.0)
    }

    /// Training-mode forward with inverted dropout on the outputs.
    pub fn forward_train(&self, seq: &Tensor, rate: f64, rng: &mut Rng) -> Result<Tensor> {
        let len = self.check(seq)?;
        if rate == 0.0 {
            return self.forward(seq);
        }
        let mask = dropout_mask(2 * self.hidden, len, rate, rng);
        Ok(self.run(seq, Some(&mask))?.0)
    }

    /// Parameter gradient of `Σ dout ⊙ forward(seq)` (eval mode).
    pub fn backward(&self, seq: &Tensor, dout: &Tensor) -> Result<Vec<f64>> {
        let (out, [fwd, bwd]) = self.run(seq, None)?;
        if dout.shape != out.shape {
            return Err(VibroError::Shape(format!("gradient shape {:?} != output {:?}", dout.shape, out.shape)));
        }
        let len = out.shape[0];
        let h = self.hidden;
        let mut dh = vec![0.0; 2 * h * len];
        for t in 0..len {
            for r in 0..2 * h {
                dh[r * len + t] = dout.data[t * 2 * h + r];
            }
        }
        let [fo, bo] = self.offsets();
        let mut grad = vec![0.0; self.values.len()];
        dir_backward(&self.values, fo, self.input, h, &seq.data, len, 1, false, &fwd, &dh[..h * len], &mut grad);
        dir_backward(&self.values, bo, self.input, h, &seq.data, len, 1, true, &bwd, &dh[h * len..], &mut grad);
        Ok(grad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_zero_output() {
        let l = BiLstm::zeros(2, 3);
        let seq = Tensor::new(vec![2, 5], (0..10).map(|v| v as f64).collect()).unwrap();
        assert!(l.forward(&seq).unwrap().data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn wrong_input_width() {
        let l = BiLstm::zeros(2, 3);
        assert!(l.forward(&Tensor::zeros(vec![3, 4])).is_err());
    }
}
