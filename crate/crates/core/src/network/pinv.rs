//! Pseudoinverse backward pass.
//!
//! Per block `(wᵢ, bᵢ)` with input `cᵢ` and current output `oᵢ = cᵢwᵢ + bᵢ`,
//! the correction solves `cᵢ·Δw + Δb = oᵢ − tᵢ`. The system is one equation in
//! two unknowns; `[cᵢ 1]⁺ · (oᵢ − tᵢ)` is its minimum-norm solution. The
//! update is `w ← w − α·Δw`, `b ← b − α·Δb`.
//!
//! A neuron's pre-activation target is shared equally among its blocks
//! (`tᵢ = t / n`). The input each block would have needed to hit its target
//! under the current parameters, `(tᵢ − bᵢ) / wᵢ`, becomes the neuron's
//! required input; a layer averages those over its neurons and hands the
//! result to the previous layer as that layer's target output.

use super::{ForwardTrace, Layer, Network, NeuronParams};
use crate::linalg;
use crate::{Error, Result};

/// Weights closer to zero than this are replaced by `±MIN_WEIGHT_MAGNITUDE`
/// when solving for the required input.
pub const MIN_WEIGHT_MAGNITUDE: f64 = 1e-6;

/// Minimum-norm `(Δw, Δb)` for one block.
#[inline]
pub fn block_correction(c: f64, w: f64, b: f64, block_target: f64) -> (f64, f64) {
    let error = c * w + b - block_target;
    let mut pinv = [0.0; 2];
    linalg::row_pseudoinverse_into(&[c, 1.0], &mut pinv)
        .expect("[c, 1] always has a nonzero entry");
    (pinv[0] * error, pinv[1] * error)
}

#[inline]
fn guarded_weight(w: f64) -> f64 {
    if w.abs() >= MIN_WEIGHT_MAGNITUDE {
        w
    } else if w.is_sign_negative() && w != 0.0 {
        -MIN_WEIGHT_MAGNITUDE
    } else {
        MIN_WEIGHT_MAGNITUDE
    }
}

impl NeuronParams {
    /// Corrects every block toward `preact_target / fan_in` and writes the
    /// required input (from the pre-update parameters) into `required`.
    pub(crate) fn pinv_update(
        &mut self,
        input: &[f64],
        preact_target: f64,
        lr: f64,
        required: &mut [f64],
    ) {
        let block_target = preact_target / self.fan_in() as f64;
        for (((w, b), &c), req) in self
            .weights
            .iter_mut()
            .zip(self.biases.iter_mut())
            .zip(input)
            .zip(required.iter_mut())
        {
            *req = (block_target - *b) / guarded_weight(*w);
            let (dw, db) = block_correction(c, *w, *b, block_target);
            *w -= lr * dw;
            *b -= lr * db;
        }
    }
}

/// Returns the corrected neuron and its required input vector.
pub fn neuron_backward(
    params: &NeuronParams,
    input: &[f64],
    preact_target: f64,
    lr: f64,
) -> Result<(NeuronParams, Vec<f64>)> {
    if input.len() != params.fan_in() {
        return Err(Error::DimensionMismatch {
            what: "neuron input",
            expected: params.fan_in(),
            actual: input.len(),
        });
    }
    let mut updated = params.clone();
    let mut required = vec![0.0; input.len()];
    updated.pinv_update(input, preact_target, lr, &mut required);
    Ok((updated, required))
}

impl Layer {
    /// In-place pseudoinverse update; returns the averaged required input.
    pub fn pinv_backward(
        &mut self,
        input: &[f64],
        postact_targets: &[f64],
        lr: f64,
    ) -> Result<Vec<f64>> {
        if input.len() != self.fan_in() {
            return Err(Error::DimensionMismatch {
                what: "layer input",
                expected: self.fan_in(),
                actual: input.len(),
            });
        }
        if postact_targets.len() != self.len() {
            return Err(Error::DimensionMismatch {
                what: "layer targets",
                expected: self.len(),
                actual: postact_targets.len(),
            });
        }
        // Invert everything first so an unsupported activation leaves the
        // layer untouched.
        let preact_targets = postact_targets
            .iter()
            .map(|&y| self.activation.invert(y))
            .collect::<Result<Vec<_>>>()?;

        let fan_in = self.fan_in();
        let mut sum = vec![0.0; fan_in];
        let mut required = vec![0.0; fan_in];
        for (neuron, &target) in self.neurons.iter_mut().zip(&preact_targets) {
            neuron.pinv_update(input, target, lr, &mut required);
            for (s, r) in sum.iter_mut().zip(&required) {
                *s += r;
            }
        }
        let count = self.neurons.len() as f64;
        for s in &mut sum {
            *s /= count;
        }
        Ok(sum)
    }
}

/// Functional form of [`Layer::pinv_backward`].
pub fn layer_backward(
    layer: &Layer,
    input: &[f64],
    postact_targets: &[f64],
    lr: f64,
) -> Result<(Layer, Vec<f64>)> {
    let mut updated = layer.clone();
    let required = updated.pinv_backward(input, postact_targets, lr)?;
    Ok((updated, required))
}

impl Network {
    /// One pseudoinverse step for the sample recorded in `trace`.
    ///
    /// Layers are visited output first; each layer's target is the averaged
    /// required input of the layer after it. Inputs come from the trace, so
    /// every layer sees the values it produced before any update.
    pub fn backward(&mut self, trace: &ForwardTrace, target: &[f64], lr: f64) -> Result<()> {
        self.check_trace(trace, target)?;
        if !self.layers.iter().all(|l| l.activation.has_inverse()) {
            let bad = self.layers.iter().find(|l| !l.activation.has_inverse()).unwrap();
            return Err(Error::UnsupportedInverse(bad.activation.name()));
        }
        let mut targets = target.to_vec();
        for (layer, lt) in self.layers.iter_mut().zip(&trace.layers).rev() {
            targets = layer.pinv_backward(&lt.input, &targets, lr)?;
        }
        Ok(())
    }
}
