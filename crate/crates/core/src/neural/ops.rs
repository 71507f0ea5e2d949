//! Layer kernels with hand-written backward passes.
//!
//! Batched kernels keep one column per record (`features × batch`), or for
//! sequences one column per `(record, step)`.

use serde::{Deserialize, Serialize};

use super::tensor::Tensor;
use crate::error::{Result, VibroError};

/// Strided view of a matrix stored in a flat slice.
#[derive(Debug, Clone, Copy)]
pub(crate) struct View {
    pub off: usize,
    pub rs: usize,
    pub cs: usize,
}

impl View {
    /// A row-major matrix with `cols` columns.
    pub fn rm(cols: usize) -> View {
        View { off: 0, rs: cols, cs: 1 }
    }

    /// The transpose of a row-major matrix with `cols` columns.
    pub fn tr(cols: usize) -> View {
        View { off: 0, rs: 1, cs: cols }
    }

    fn last(&self, rows: usize, cols: usize) -> usize {
        self.off + (rows - 1) * self.rs + (cols - 1) * self.cs
    }
}

/// `c = alpha·a·b + beta·c` for `a: m×k`, `b: k×n`, `c: m×n`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm(
    m: usize,
    k: usize,
    n: usize,
    alpha: f64,
    a: &[f64],
    av: View,
    b: &[f64],
    bv: View,
    beta: f64,
    c: &mut [f64],
    cv: View,
) {
    if m == 0 || n == 0 {
        return;
    }
    if k == 0 {
        for i in 0..m {
            for j in 0..n {
                let idx = cv.off + i * cv.rs + j * cv.cs;
                c[idx] = if beta == 0.0 { 0.0 } else { beta * c[idx] };
            }
        }
        return;
    }
    assert!(av.last(m, k) < a.len(), "gemm: a out of bounds");
    assert!(bv.last(k, n) < b.len(), "gemm: b out of bounds");
    assert!(cv.last(m, n) < c.len(), "gemm: c out of bounds");
    // SAFETY: every index touched lies within the slices (checked above)
    // and `c` is borrowed mutably, so it cannot alias `a` or `b`.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            alpha,
            a.as_ptr().add(av.off),
            av.rs as isize,
            av.cs as isize,
            b.as_ptr().add(bv.off),
            bv.rs as isize,
            bv.cs as isize,
            beta,
            c.as_mut_ptr().add(cv.off),
            cv.rs as isize,
            cv.cs as isize,
        );
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Linear,
}

impl Activation {
    fn apply(self, v: &mut [f64]) {
        if self == Activation::Relu {
            v.iter_mut().for_each(|x| *x = x.max(0.0));
        }
    }

    /// Multiplies `grad` by the activation derivative, given the activated output.
    fn chain(self, out: &[f64], grad: &mut [f64]) {
        if self == Activation::Relu {
            for (g, &o) in grad.iter_mut().zip(out) {
                if o <= 0.0 {
                    *g = 0.0;
                }
            }
        }
    }
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// `y = act(W x + b)` for `x: D×B`, `w: F×D`; returns `F×B`.
pub(crate) fn dense_fwd(x: &[f64], batch: usize, w: &[f64], b: &[f64], act: Activation) -> Vec<f64> {
    let f = b.len();
    let d = w.len() / f;
    let mut y = vec![0.0; f * batch];
    for (row, &bias) in y.chunks_mut(batch).zip(b) {
        row.fill(bias);
    }
    gemm(f, d, batch, 1.0, w, View::rm(d), x, View::rm(batch), 1.0, &mut y, View::rm(batch));
    act.apply(&mut y);
    y
}

/// Backward of [`dense_fwd`]. `dy` is overwritten with the pre-activation
/// gradient; weight and bias gradients are accumulated. Returns `dx` when
/// requested.
#[allow(clippy::too_many_arguments)]
pub(crate) fn dense_bwd(
    x: &[f64],
    batch: usize,
    w: &[f64],
    y: &[f64],
    act: Activation,
    dy: &mut [f64],
    dw: &mut [f64],
    db: &mut [f64],
    want_dx: bool,
) -> Option<Vec<f64>> {
    let f = db.len();
    let d = w.len() / f;
    act.chain(y, dy);
    gemm(f, batch, d, 1.0, dy, View::rm(batch), x, View::tr(batch), 1.0, dw, View::rm(d));
    for (g, row) in db.iter_mut().zip(dy.chunks(batch)) {
        *g += row.iter().sum::<f64>();
    }
    want_dx.then(|| {
        let mut dx = vec![0.0; d * batch];
        gemm(d, f, batch, 1.0, w, View::tr(d), dy, View::rm(batch), 0.0, &mut dx, View::rm(batch));
        dx
    })
}

/// Unfolds `x: C×(B·T)` (column `b·T + t`) into `(C·K)×(B·T)` patches with
/// zero padding, so that a convolution is one matrix product.
pub(crate) fn im2col(x: &[f64], channels: usize, batch: usize, len: usize, k: usize) -> Vec<f64> {
    let cols = batch * len;
    let pad = k / 2;
    let mut out = vec![0.0; channels * k * cols];
    for c in 0..channels {
        for j in 0..k {
            let row = &mut out[(c * k + j) * cols..(c * k + j + 1) * cols];
            for b in 0..batch {
                let src = &x[c * cols + b * len..c * cols + (b + 1) * len];
                let dst = &mut row[b * len..(b + 1) * len];
                // dst[t] = src[t + j - pad]
                let lo = pad.saturating_sub(j);
                let hi = (len + pad).saturating_sub(j).min(len);
                if lo < hi {
                    dst[lo..hi].copy_from_slice(&src[lo + j - pad..hi + j - pad]);
                }
            }
        }
    }
    out
}

pub(crate) fn col2im(dcols: &[f64], channels: usize, batch: usize, len: usize, k: usize) -> Vec<f64> {
    let cols = batch * len;
    let pad = k / 2;
    let mut dx = vec![0.0; channels * cols];
    for c in 0..channels {
        for j in 0..k {
            let row = &dcols[(c * k + j) * cols..(c * k + j + 1) * cols];
            for b in 0..batch {
                let src = &row[b * len..(b + 1) * len];
                let dst = &mut dx[c * cols + b * len..c * cols + (b + 1) * len];
                let lo = pad.saturating_sub(j);
                let hi = (len + pad).saturating_sub(j).min(len);
                for t in lo..hi {
                    dst[t + j - pad] += src[t];
                }
            }
        }
    }
    dx
}

/// Same-padded cross-correlation of `x: Cin×(B·T)` with `w: Cout×Cin×K`.
/// Returns the output and the unfolded input for the backward pass.
pub(crate) fn conv_fwd(
    x: &[f64],
    cin: usize,
    batch: usize,
    len: usize,
    w: &[f64],
    bias: &[f64],
    k: usize,
) -> (Vec<f64>, Vec<f64>) {
    let cout = bias.len();
    let cols = batch * len;
    let patches = im2col(x, cin, batch, len, k);
    let mut y = vec![0.0; cout * cols];
    for (row, &b) in y.chunks_mut(cols).zip(bias) {
        row.fill(b);
    }
    gemm(cout, cin * k, cols, 1.0, w, View::rm(cin * k), &patches, View::rm(cols), 1.0, &mut y, View::rm(cols));
    (y, patches)
}

/// Accumulates kernel and bias gradients; returns `dx` when requested.
#[allow(clippy::too_many_arguments)]
pub(crate) fn conv_bwd(
    patches: &[f64],
    cin: usize,
    batch: usize,
    len: usize,
    w: &[f64],
    k: usize,
    dy: &[f64],
    dw: &mut [f64],
    db: &mut [f64],
    want_dx: bool,
) -> Option<Vec<f64>> {
    let cout = db.len();
    let cols = batch * len;
    gemm(cout, cols, cin * k, 1.0, dy, View::rm(cols), patches, View::tr(cols), 1.0, dw, View::rm(cin * k));
    for (g, row) in db.iter_mut().zip(dy.chunks(cols)) {
        *g += row.iter().sum::<f64>();
    }
    want_dx.then(|| {
        let mut dcols = vec![0.0; cin * k * cols];
        gemm(cin * k, cout, cols, 1.0, w, View::tr(cin * k), dy, View::rm(cols), 0.0, &mut dcols, View::rm(cols));
        col2im(&dcols, cin, batch, len, k)
    })
}

pub(crate) fn pooled_len(len: usize, width: usize) -> usize {
    len.div_ceil(width)
}

/// Non-overlapping max pooling of `x: C×(B·T)`; ties go to the first index.
pub(crate) fn pool_fwd(x: &[f64], channels: usize, batch: usize, len: usize, width: usize) -> (Vec<f64>, Vec<u32>) {
    let out_len = pooled_len(len, width);
    let mut y = Vec::with_capacity(channels * batch * out_len);
    let mut arg = Vec::with_capacity(channels * batch * out_len);
    for c in 0..channels {
        for b in 0..batch {
            let base = c * batch * len + b * len;
            for o in 0..out_len {
                let start = o * width;
                let end = (start + width).min(len);
                let mut best = start;
                for t in start + 1..end {
                    if x[base + t] > x[base + best] {
                        best = t;
                    }
                }
                y.push(x[base + best]);
                arg.push((base + best) as u32);
            }
        }
    }
    (y, arg)
}

pub(crate) fn pool_bwd(dy: &[f64], arg: &[u32], input_size: usize) -> Vec<f64> {
    let mut dx = vec![0.0; input_size];
    for (&g, &i) in dy.iter().zip(arg) {
        dx[i as usize] += g;
    }
    dx
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(VibroError::Shape(format!("{what}: expected {want} values, got {got}")));
    }
    Ok(())
}

/// `y = act(W x + b)` for a single input vector.
pub fn dense_forward(x: &[f64], weights: &Tensor, bias: &[f64], activation: Activation) -> Result<Vec<f64>> {
    let (f, d) = weights.dims2()?;
    check_len("dense input", x.len(), d)?;
    check_len("dense bias", bias.len(), f)?;
    Ok(dense_fwd(x, 1, &weights.data, bias, activation))
}

/// Gradients `(dx, dW, db)` of a dense layer given the upstream gradient
/// `dy` and the layer's output `y`.
pub fn dense_backward(
    x: &[f64],
    weights: &Tensor,
    y: &[f64],
    activation: Activation,
    dy: &[f64],
) -> Result<(Vec<f64>, Tensor, Vec<f64>)> {
    let (f, d) = weights.dims2()?;
    check_len("dense input", x.len(), d)?;
    check_len("dense output", y.len(), f)?;
    check_len("dense gradient", dy.len(), f)?;
    let mut dz = dy.to_vec();
    let mut dw = Tensor::zeros(vec![f, d]);
    let mut db = vec![0.0; f];
    let dx = dense_bwd(x, 1, &weights.data, y, activation, &mut dz, &mut dw.data, &mut db, true).unwrap();
    Ok((dx, dw, db))
}

fn conv_shapes(x: &Tensor, kernels: &Tensor, bias: &[f64]) -> Result<(usize, usize, usize, usize)> {
    let (cin, len) = x.dims2()?;
    let (cout, kin, k) = kernels.dims3()?;
    if kin != cin {
        return Err(VibroError::Shape(format!("kernels expect {kin} input channels, input has {cin}")));
    }
    if k % 2 == 0 {
        return Err(VibroError::Shape(format!("same padding needs an odd kernel width, got {k}")));
    }
    check_len("conv bias", bias.len(), cout)?;
    Ok((cin, len, cout, k))
}

/// Zero-padded same-length cross-correlation of `x: Cin×T` with
/// `kernels: Cout×Cin×K`.
pub fn conv1d_same(x: &Tensor, kernels: &Tensor, bias: &[f64]) -> Result<Tensor> {
    let (cin, len, cout, k) = conv_shapes(x, kernels, bias)?;
    let (y, _) = conv_fwd(&x.data, cin, 1, len, &kernels.data, bias, k);
    Tensor::new(vec![cout, len], y)
}

/// Gradients `(dx, dkernels, dbias)` of [`conv1d_same`].
pub fn conv1d_same_backward(x: &Tensor, kernels: &Tensor, bias: &[f64], dy: &Tensor) -> Result<(Tensor, Tensor, Vec<f64>)> {
    let (cin, len, cout, k) = conv_shapes(x, kernels, bias)?;
    check_len("conv gradient", dy.len(), cout * len)?;
    let patches = im2col(&x.data, cin, 1, len, k);
    let mut dk = Tensor::zeros(kernels.shape.clone());
    let mut db = vec![0.0; cout];
    let dx = conv_bwd(&patches, cin, 1, len, &kernels.data, k, &dy.data, &mut dk.data, &mut db, true).unwrap();
    Ok((Tensor::new(vec![cin, len], dx)?, dk, db))
}

/// Max over non-overlapping windows of `x: C×T`, keeping a partial final
/// window. Also returns the flat argmax index of every output.
pub fn maxpool1d(x: &Tensor, width: usize) -> Result<(Tensor, Vec<usize>)> {
    let (c, len) = x.dims2()?;
    if width == 0 {
        return Err(VibroError::InvalidArgument("pool width must be >= 1".into()));
    }
    let (y, arg) = pool_fwd(&x.data, c, 1, len, width);
    Ok((Tensor::new(vec![c, pooled_len(len, width)], y)?, arg.into_iter().map(|i| i as usize).collect()))
}

/// Routes each output gradient to its argmax input.
pub fn maxpool1d_backward(dy: &Tensor, argmax: &[usize], input_shape: &[usize]) -> Result<Tensor> {
    check_len("pool gradient", dy.len(), argmax.len())?;
    let n: usize = input_shape.iter().product();
    let mut dx = vec![0.0; n];
    for (&g, &i) in dy.data.iter().zip(argmax) {
        dx[i] += g;
    }
    Tensor::new(input_shape.to_vec(), dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_dense() {
        let w = Tensor::new(vec![3, 3], vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let x = [-1.0, 2.0, -3.0];
        assert_eq!(dense_forward(&x, &w, &[0.0; 3], Activation::Linear).unwrap(), x.to_vec());
        assert_eq!(dense_forward(&x, &w, &[0.0; 3], Activation::Relu).unwrap(), vec![0.0, 2.0, 0.0]);
    }

    #[test]
    fn conv_hand_case() {
        let x = Tensor::new(vec![1, 3], vec![1.0, 2.0, 3.0]).unwrap();
        let k = Tensor::new(vec![1, 1, 3], vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(conv1d_same(&x, &k, &[0.0]).unwrap().data, vec![3.0, 6.0, 5.0]);
        let delta = Tensor::new(vec![1, 1, 3], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(conv1d_same(&x, &delta, &[0.0]).unwrap().data, x.data);
    }

    #[test]
    fn conv_rejects_even_kernel() {
        let x = Tensor::new(vec![1, 3], vec![1.0, 2.0, 3.0]).unwrap();
        let k = Tensor::new(vec![1, 1, 2], vec![1.0, 1.0]).unwrap();
        assert!(conv1d_same(&x, &k, &[0.0]).is_err());
    }

    #[test]
    fn pool_cases() {
        let x = Tensor::new(vec![1, 4], vec![1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!(maxpool1d(&x, 2).unwrap().0.data, vec![3.0, 5.0]);
        assert_eq!(maxpool1d(&x, 1).unwrap().0.data, x.data);
        let odd = Tensor::new(vec![1, 5], vec![1.0, 3.0, 2.0, 5.0, 7.0]).unwrap();
        assert_eq!(maxpool1d(&odd, 2).unwrap().0.data, vec![3.0, 5.0, 7.0]);
        let tie = Tensor::new(vec![1, 2], vec![2.0, 2.0]).unwrap();
        let (y, arg) = maxpool1d(&tie, 2).unwrap();
        let dx = maxpool1d_backward(&Tensor::new(vec![1, 1], vec![1.0]).unwrap(), &arg, &[1, 2]).unwrap();
        assert_eq!(y.data, vec![2.0]);
        assert_eq!(dx.data, vec![1.0, 0.0]);
    }

    #[test]
    fn gemm_transposed_views() {
        // a = [[1,2],[3,4]], b = [[5,6],[7,8]]
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [5.0, 6.0, 7.0, 8.0];
        let mut c = [0.0; 4];
        gemm(2, 2, 2, 1.0, &a, View::tr(2), &b, View::rm(2), 0.0, &mut c, View::rm(2));
        // aᵀ b = [[1,3],[2,4]]·b
        assert_eq!(c, [26.0, 30.0, 38.0, 44.0]);
    }
}
