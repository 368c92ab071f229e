//! Gradient-descent baseline on the weight–bias block architecture.
//!
//! Loss is `½ Σₖ (outₖ − targetₖ)²`. For neuron `j` with pre-activation
//! `zⱼ = Σᵢ (cᵢwⱼᵢ + bⱼᵢ)`: `∂z/∂wⱼᵢ = cᵢ`, `∂z/∂bⱼᵢ = 1`, `∂z/∂cᵢ = wⱼᵢ`.

use super::{ForwardTrace, Network};
use crate::Result;

/// Loss gradients for one layer, laid out like the layer's neurons.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

impl Network {
    /// Exact gradients of `½‖out − target‖²` with respect to every parameter.
    pub fn gradients(&self, trace: &ForwardTrace, target: &[f64]) -> Result<Vec<LayerGradients>> {
        self.check_trace(trace, target)?;
        let mut grads = Vec::with_capacity(self.layers.len());
        let mut upstream: Vec<f64> = trace
            .output()
            .iter()
            .zip(target)
            .map(|(o, t)| o - t)
            .collect();

        for (layer, lt) in self.layers.iter().zip(&trace.layers).rev() {
            let mut next = vec![0.0; layer.fan_in()];
            let mut gw = Vec::with_capacity(layer.len());
            let mut gb = Vec::with_capacity(layer.len());
            for ((neuron, &z), &d_out) in layer.neurons.iter().zip(&lt.preactivation).zip(&upstream) {
                let dz = d_out * layer.activation.derivative(z);
                gw.push(lt.input.iter().map(|c| dz * c).collect());
                gb.push(vec![dz; neuron.fan_in()]);
                for (n, w) in next.iter_mut().zip(&neuron.weights) {
                    *n += dz * w;
                }
            }
            grads.push(LayerGradients {
                weights: gw,
                biases: gb,
            });
            upstream = next;
        }
        grads.reverse();
        Ok(grads)
    }

    /// One gradient-descent step for the sample recorded in `trace`.
    pub fn gd_backward(&mut self, trace: &ForwardTrace, target: &[f64], lr: f64) -> Result<()> {
        let grads = self.gradients(trace, target)?;
        for (layer, g) in self.layers.iter_mut().zip(&grads) {
            for ((neuron, gw), gb) in layer.neurons.iter_mut().zip(&g.weights).zip(&g.biases) {
                for (w, d) in neuron.weights.iter_mut().zip(gw) {
                    *w -= lr * d;
                }
                for (b, d) in neuron.biases.iter_mut().zip(gb) {
                    *b -= lr * d;
                }
            }
        }
        Ok(())
    }
}
