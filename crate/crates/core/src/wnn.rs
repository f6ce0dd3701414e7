//! Spectral wavelet convolutions on graphs.
//!
//! A layer maps `n × F_in` features to `n × F_out` by filtering each input
//! channel in the wavelet domain,
//! `out[:, j] = σ(Wᵀ · Σ_i diag(g_ij) · W · f[:, i])`,
//! where `W` is the basis matrix whose rows are wavelets, so `W · f` are the
//! wavelet coefficients of `f`. No bias.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::wavelets::WaveletBasis;

/// Probabilities below this are clamped inside the logarithm.
pub const PROB_FLOOR: f64 = 1e-12;
/// Training stops once the loss exceeds this.
pub const DIVERGENCE_LOSS: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonlinearity {
    Identity,
    Relu,
    /// Row-wise across output channels.
    Softmax,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WnnLayer {
    pub in_channels: usize,
    pub out_channels: usize,
    pub n: usize,
    pub nonlinearity: Nonlinearity,
    /// Flattened `F_in × F_out × n`, entry `((i · F_out) + j) · n + m`.
    pub filters: Vec<f64>,
}

impl WnnLayer {
    /// All-ones filters.
    pub fn new(n: usize, in_channels: usize, out_channels: usize, nonlinearity: Nonlinearity) -> Self {
        Self {
            in_channels,
            out_channels,
            n,
            nonlinearity,
            filters: vec![1.0; in_channels * out_channels * n],
        }
    }

    pub fn filter(&self, i: usize, j: usize) -> &[f64] {
        let o = (i * self.out_channels + j) * self.n;
        &self.filters[o..o + self.n]
    }

    fn filter_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let o = (i * self.out_channels + j) * self.n;
        &mut self.filters[o..o + self.n]
    }

    fn validate(&self) -> Result<()> {
        if self.filters.len() != self.in_channels * self.out_channels * self.n {
            return Err(MmfError::DimensionMismatch {
                expected: self.in_channels * self.out_channels * self.n,
                got: self.filters.len(),
            });
        }
        if self.filters.iter().any(|v| !v.is_finite()) {
            return Err(MmfError::InvalidParameter("filters contain non-finite values".into()));
        }
        Ok(())
    }
}

struct LayerCache {
    /// Wavelet coefficients of each input channel, `F_in × n`.
    coeffs: Vec<Vec<f64>>,
    pre: Matrix,
    out: Matrix,
}

fn check_shapes(layer: &WnnLayer, w: &WaveletBasis, f_in: &Matrix) -> Result<()> {
    layer.validate()?;
    if w.n != layer.n || f_in.rows() != layer.n {
        return Err(MmfError::DimensionMismatch {
            expected: layer.n,
            got: if w.n != layer.n { w.n } else { f_in.rows() },
        });
    }
    if f_in.cols() != layer.in_channels {
        return Err(MmfError::DimensionMismatch {
            expected: layer.in_channels,
            got: f_in.cols(),
        });
    }
    Ok(())
}

fn softmax_rows(m: &mut Matrix) {
    for r in 0..m.rows() {
        let row = m.row_mut(r);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut sum = 0.0;
        for v in row.iter_mut() {
            *v = (*v - max).exp();
            sum += *v;
        }
        for v in row.iter_mut() {
            *v /= sum;
        }
    }
}

fn forward_cached(layer: &WnnLayer, w: &WaveletBasis, f_in: &Matrix) -> Result<LayerCache> {
    check_shapes(layer, w, f_in)?;
    let n = layer.n;
    let coeffs: Vec<Vec<f64>> = (0..layer.in_channels)
        .map(|i| w.matrix.matvec(&f_in.column(i)))
        .collect::<Result<_>>()?;
    let mut pre = Matrix::zeros(n, layer.out_channels);
    let mut filtered = vec![0.0; n];
    for j in 0..layer.out_channels {
        filtered.fill(0.0);
        for (i, z) in coeffs.iter().enumerate() {
            for ((acc, g), zm) in filtered.iter_mut().zip(layer.filter(i, j)).zip(z) {
                *acc += g * zm;
            }
        }
        for (v, x) in w.matrix.matvec_transposed(&filtered)?.into_iter().enumerate() {
            pre[(v, j)] = x;
        }
    }
    let mut out = pre.clone();
    match layer.nonlinearity {
        Nonlinearity::Identity => {}
        Nonlinearity::Relu => out.as_mut_slice().iter_mut().for_each(|v| *v = v.max(0.0)),
        Nonlinearity::Softmax => softmax_rows(&mut out),
    }
    Ok(LayerCache { coeffs, pre, out })
}

pub fn layer_forward(layer: &WnnLayer, w: &WaveletBasis, f_in: &Matrix) -> Result<Matrix> {
    Ok(forward_cached(layer, w, f_in)?.out)
}

/// Vertex labels for the supervised loss.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledNodes {
    pairs: Vec<(usize, usize)>,
    classes: usize,
}

impl LabeledNodes {
    pub fn new(pairs: Vec<(usize, usize)>, classes: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(v, c) in &pairs {
            if c >= classes {
                return Err(MmfError::InvalidParameter(format!("class {c} of vertex {v} not below C = {classes}")));
            }
            if !seen.insert(v) {
                return Err(MmfError::InvalidParameter(format!("vertex {v} labeled twice")));
            }
        }
        Ok(Self { pairs, classes })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

fn check_labels(pairs: &[(usize, usize)], f_out: &Matrix) -> Result<()> {
    for &(v, c) in pairs {
        if v >= f_out.rows() {
            return Err(MmfError::IndexOutOfRange { index: v, n: f_out.rows() });
        }
        if c >= f_out.cols() {
            return Err(MmfError::IndexOutOfRange { index: c, n: f_out.cols() });
        }
    }
    Ok(())
}

fn cross_entropy(f_out: &Matrix, pairs: &[(usize, usize)]) -> f64 {
    pairs
        .iter()
        .map(|&(v, c)| {
            let p = f_out[(v, c)];
            if p < PROB_FLOOR {
                log::warn!("probability {p:e} of the true class at vertex {v} clamped to {PROB_FLOOR:e}");
            }
            -p.max(PROB_FLOOR).ln()
        })
        .sum()
}

/// `−Σ_v ln f_out[v][y_v]` over the labeled vertices.
pub fn loss(f_out: &Matrix, labels: &LabeledNodes) -> Result<f64> {
    check_labels(labels.pairs(), f_out)?;
    Ok(cross_entropy(f_out, labels.pairs()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub layers: Vec<WnnLayer>,
}

impl Network {
    /// `channels = [F_0, F_1, …, F_K]`; hidden layers use `hidden`, the top
    /// layer is softmax. Filters start at one.
    pub fn new(n: usize, channels: &[usize], hidden: Nonlinearity) -> Result<Self> {
        if channels.len() < 2 || channels.contains(&0) {
            return Err(MmfError::InvalidParameter(
                "need at least input and output channel counts, all positive".into(),
            ));
        }
        let k = channels.len() - 1;
        let layers = (0..k)
            .map(|l| {
                let sigma = if l + 1 == k { Nonlinearity::Softmax } else { hidden };
                WnnLayer::new(n, channels[l], channels[l + 1], sigma)
            })
            .collect();
        Ok(Self { layers })
    }

    pub fn forward(&self, w: &WaveletBasis, f0: &Matrix) -> Result<Matrix> {
        let mut x = f0.clone();
        for layer in &self.layers {
            x = layer_forward(layer, w, &x)?;
        }
        Ok(x)
    }

    pub fn loss(&self, w: &WaveletBasis, f0: &Matrix, labels: &LabeledNodes) -> Result<f64> {
        loss(&self.forward(w, f0)?, labels)
    }

    pub fn predict(&self, w: &WaveletBasis, f0: &Matrix) -> Result<Vec<usize>> {
        let out = self.forward(w, f0)?;
        Ok((0..out.rows())
            .map(|v| {
                let row = out.row(v);
                (0..row.len()).fold(0, |best, c| if row[c] > row[best] { c } else { best })
            })
            .collect())
    }

    /// Fraction of `labels` whose argmax prediction is correct.
    pub fn accuracy(&self, w: &WaveletBasis, f0: &Matrix, labels: &LabeledNodes) -> Result<f64> {
        let pred = self.predict(w, f0)?;
        check_labels(labels.pairs(), &Matrix::zeros(pred.len(), labels.classes()))?;
        if labels.pairs().is_empty() {
            return Ok(0.0);
        }
        let hits = labels.pairs().iter().filter(|&&(v, c)| pred[v] == c).count();
        Ok(hits as f64 / labels.pairs().len() as f64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let net: Self = serde_json::from_str(text).map_err(|e| MmfError::Schema(e.to_string()))?;
        for (l, layer) in net.layers.iter().enumerate() {
            layer.validate().map_err(|e| MmfError::Schema(format!("layer {l}: {e}")))?;
        }
        Ok(net)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Loss gradients with the same layout as the filters, one per layer.
pub type FilterGradients = Vec<Vec<f64>>;

/// Loss and its exact gradient with respect to every filter entry.
pub fn gradients(net: &Network, w: &WaveletBasis, f0: &Matrix, labels: &LabeledNodes) -> Result<(f64, FilterGradients)> {
    loss_and_gradients(net, w, f0, labels.pairs())
}

/// Like [`gradients`] but over a raw label list, which may repeat vertices.
pub(crate) fn loss_and_gradients(
    net: &Network,
    w: &WaveletBasis,
    f0: &Matrix,
    pairs: &[(usize, usize)],
) -> Result<(f64, FilterGradients)> {
    let mut caches = Vec::with_capacity(net.layers.len());
    let mut x = f0.clone();
    for layer in &net.layers {
        let cache = forward_cached(layer, w, &x)?;
        x = cache.out.clone();
        caches.push(cache);
    }
    check_labels(pairs, &x)?;
    let value = cross_entropy(&x, pairs);

    let mut d_out = Matrix::zeros(x.rows(), x.cols());
    for &(v, c) in pairs {
        let p = x[(v, c)];
        if p >= PROB_FLOOR {
            d_out[(v, c)] -= 1.0 / p;
        }
    }

    let mut grads: FilterGradients = vec![Vec::new(); net.layers.len()];
    for (l, (layer, cache)) in net.layers.iter().zip(&caches).enumerate().rev() {
        let d_pre = match layer.nonlinearity {
            Nonlinearity::Identity => d_out,
            Nonlinearity::Relu => Matrix::from_fn(d_out.rows(), d_out.cols(), |v, j| {
                if cache.pre[(v, j)] > 0.0 {
                    d_out[(v, j)]
                } else {
                    0.0
                }
            }),
            Nonlinearity::Softmax => {
                let p = &cache.out;
                let mut d = Matrix::zeros(p.rows(), p.cols());
                for v in 0..p.rows() {
                    let inner: f64 = (0..p.cols()).map(|k| p[(v, k)] * d_out[(v, k)]).sum();
                    for j in 0..p.cols() {
                        d[(v, j)] = p[(v, j)] * (d_out[(v, j)] - inner);
                    }
                }
                d
            }
        };
        let n = layer.n;
        let d_coeff: Vec<Vec<f64>> = (0..layer.out_channels)
            .map(|j| w.matrix.matvec(&d_pre.column(j)))
            .collect::<Result<_>>()?;
        let mut g = vec![0.0; layer.filters.len()];
        let mut d_in = Matrix::zeros(n, layer.in_channels);
        for (i, z) in cache.coeffs.iter().enumerate() {
            let mut dz = vec![0.0; n];
            for (j, dc) in d_coeff.iter().enumerate() {
                let o = (i * layer.out_channels + j) * n;
                let filt = layer.filter(i, j);
                for m in 0..n {
                    g[o + m] = z[m] * dc[m];
                    dz[m] += filt[m] * dc[m];
                }
            }
            for (v, val) in w.matrix.matvec_transposed(&dz)?.into_iter().enumerate() {
                d_in[(v, i)] = val;
            }
        }
        grads[l] = g;
        d_out = d_in;
    }
    Ok((value, grads))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    /// Loss before each update.
    pub loss_trace: Vec<f64>,
    pub diverged: bool,
}

/// Full-batch gradient descent for `epochs` steps.
pub fn train(
    net: &mut Network,
    w: &WaveletBasis,
    f0: &Matrix,
    labels: &LabeledNodes,
    lr: f64,
    epochs: usize,
) -> Result<TrainReport> {
    if !(lr >= 0.0 && lr.is_finite()) {
        return Err(MmfError::InvalidParameter(format!("learning rate {lr} must be finite and >= 0")));
    }
    let mut trace = Vec::with_capacity(epochs);
    for epoch in 0..epochs {
        let (value, grads) = gradients(net, w, f0, labels)?;
        trace.push(value);
        if !(value <= DIVERGENCE_LOSS) {
            log::warn!("training diverged at epoch {epoch} (loss {value:e})");
            return Ok(TrainReport {
                loss_trace: trace,
                diverged: true,
            });
        }
        log::debug!("epoch {epoch}: loss {value:.6e}");
        for (layer, g) in net.layers.iter_mut().zip(&grads) {
            for (p, d) in layer.filters.iter_mut().zip(g) {
                *p -= lr * d;
            }
        }
    }
    Ok(TrainReport {
        loss_trace: trace,
        diverged: false,
    })
}

/// Sets filter `(i, j)` of `layer`; for building instances by hand.
pub fn set_filter(layer: &mut WnnLayer, i: usize, j: usize, values: &[f64]) -> Result<()> {
    if i >= layer.in_channels || j >= layer.out_channels || values.len() != layer.n {
        return Err(MmfError::InvalidParameter(format!("filter ({i}, {j}) with {} values does not fit", values.len())));
    }
    layer.filter_mut(i, j).copy_from_slice(values);
    Ok(())
}
