//! Feedforward networks built from weight–bias block neurons.
//!
//! Each neuron holds one weight *and one bias* per input. A neuron with
//! inputs `c` computes the pre-activation `Σᵢ (cᵢ·wᵢ + bᵢ)`, which is the
//! usual affine map with the bias split into `n` parts. Splitting the bias
//! lets every `(wᵢ, bᵢ)` block be corrected on its own by solving
//! `cᵢ·Δw + Δb = oᵢ − tᵢ` with the pseudoinverse of `[cᵢ 1]`; see
//! [`pinv`]. A plain gradient-descent pass over the same parameters lives in
//! [`gd`].

pub mod gd;
pub mod model;
pub mod pinv;

use rand::Rng;

use crate::activations::Activation;
use crate::rng::{self, Stream};
use crate::{Error, Result};

pub use gd::LayerGradients;
pub use pinv::{block_correction, layer_backward, neuron_backward, MIN_WEIGHT_MAGNITUDE};

/// Half-width of the uniform initialization interval.
pub const INIT_RANGE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct NeuronParams {
    weights: Vec<f64>,
    biases: Vec<f64>,
}

impl NeuronParams {
    pub fn new(weights: Vec<f64>, biases: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidModel("neuron needs at least one input".into()));
        }
        if weights.len() != biases.len() {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: biases.len(),
            });
        }
        if weights.iter().chain(&biases).any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite neuron parameter".into()));
        }
        Ok(Self { weights, biases })
    }

    pub fn fan_in(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// `Σᵢ (cᵢ·wᵢ + bᵢ)`. Caller guarantees `input.len() == fan_in`.
    #[inline]
    pub(crate) fn preactivation(&self, input: &[f64]) -> f64 {
        input
            .iter()
            .zip(&self.weights)
            .zip(&self.biases)
            .map(|((c, w), b)| c * w + b)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    neurons: Vec<NeuronParams>,
    activation: Activation,
}

impl Layer {
    pub fn new(neurons: Vec<NeuronParams>, activation: Activation) -> Result<Self> {
        let Some(first) = neurons.first() else {
            return Err(Error::InvalidModel("layer needs at least one neuron".into()));
        };
        let fan_in = first.fan_in();
        if let Some(bad) = neurons.iter().find(|n| n.fan_in() != fan_in) {
            return Err(Error::DimensionMismatch {
                what: "neuron fan-in within layer",
                expected: fan_in,
                actual: bad.fan_in(),
            });
        }
        Ok(Self {
            neurons,
            activation,
        })
    }

    pub fn neurons(&self) -> &[NeuronParams] {
        &self.neurons
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn fan_in(&self) -> usize {
        self.neurons[0].fan_in()
    }

    pub fn len(&self) -> usize {
        self.neurons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neurons.is_empty()
    }

    fn forward_into(&self, input: &[f64], preact: &mut Vec<f64>, output: &mut Vec<f64>) {
        preact.clear();
        output.clear();
        for neuron in &self.neurons {
            let z = neuron.preactivation(input);
            preact.push(z);
            output.push(self.activation.apply(z));
        }
    }
}

/// Record of one layer's forward evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerTrace {
    pub input: Vec<f64>,
    pub preactivation: Vec<f64>,
    pub output: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardTrace {
    pub layers: Vec<LayerTrace>,
}

impl ForwardTrace {
    pub fn output(&self) -> &[f64] {
        &self.layers.last().expect("trace has at least one layer").output
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    input_dim: usize,
    layers: Vec<Layer>,
}

impl Network {
    pub fn new(input_dim: usize, layers: Vec<Layer>) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::InvalidModel("input_dim must be positive".into()));
        }
        if layers.is_empty() {
            return Err(Error::InvalidModel("network needs at least one layer".into()));
        }
        let mut expected = input_dim;
        for layer in &layers {
            if layer.fan_in() != expected {
                return Err(Error::DimensionMismatch {
                    what: "layer fan-in",
                    expected,
                    actual: layer.fan_in(),
                });
            }
            expected = layer.len();
        }
        Ok(Self { input_dim, layers })
    }

    /// Random network with every weight and bias drawn from U[−0.5, 0.5].
    pub fn init(
        layer_sizes: &[usize],
        input_dim: usize,
        activation: Activation,
        seed: u64,
    ) -> Result<Self> {
        if layer_sizes.is_empty() || layer_sizes.contains(&0) {
            return Err(Error::InvalidConfig(format!(
                "layer sizes must be non-empty and positive, got {layer_sizes:?}"
            )));
        }
        if input_dim == 0 {
            return Err(Error::InvalidConfig("input_dim must be positive".into()));
        }
        let mut rng = rng::seeded(seed, Stream::Init);
        let mut fan_in = input_dim;
        let mut layers = Vec::with_capacity(layer_sizes.len());
        for &size in layer_sizes {
            let neurons = (0..size)
                .map(|_| {
                    let weights = (0..fan_in)
                        .map(|_| rng.random_range(-INIT_RANGE..=INIT_RANGE))
                        .collect();
                    let biases = (0..fan_in)
                        .map(|_| rng.random_range(-INIT_RANGE..=INIT_RANGE))
                        .collect();
                    NeuronParams { weights, biases }
                })
                .collect();
            layers.push(Layer {
                neurons,
                activation,
            });
            fan_in = size;
        }
        Ok(Self { input_dim, layers })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(0, Layer::len)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Layer widths, first hidden layer to output.
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Layer::len).collect()
    }

    fn check_input(&self, input: &[f64]) -> Result<()> {
        if input.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                what: "network input",
                expected: self.input_dim,
                actual: input.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, input: &[f64]) -> Result<(Vec<f64>, ForwardTrace)> {
        self.check_input(input)?;
        let mut traces = Vec::with_capacity(self.layers.len());
        let mut current = input.to_vec();
        for layer in &self.layers {
            let mut preact = Vec::with_capacity(layer.len());
            let mut output = Vec::with_capacity(layer.len());
            layer.forward_into(&current, &mut preact, &mut output);
            traces.push(LayerTrace {
                input: std::mem::replace(&mut current, output.clone()),
                preactivation: preact,
                output,
            });
        }
        Ok((current, ForwardTrace { layers: traces }))
    }

    /// Forward pass without recording a trace.
    pub fn predict(&self, input: &[f64]) -> Result<Vec<f64>> {
        self.check_input(input)?;
        let mut current = input.to_vec();
        let mut preact = Vec::new();
        let mut next = Vec::new();
        for layer in &self.layers {
            layer.forward_into(&current, &mut preact, &mut next);
            std::mem::swap(&mut current, &mut next);
        }
        Ok(current)
    }

    fn check_trace(&self, trace: &ForwardTrace, target: &[f64]) -> Result<()> {
        if trace.layers.len() != self.layers.len() {
            return Err(Error::DimensionMismatch {
                what: "trace layer count",
                expected: self.layers.len(),
                actual: trace.layers.len(),
            });
        }
        for (layer, lt) in self.layers.iter().zip(&trace.layers) {
            if lt.input.len() != layer.fan_in() {
                return Err(Error::DimensionMismatch {
                    what: "trace layer input",
                    expected: layer.fan_in(),
                    actual: lt.input.len(),
                });
            }
            if lt.preactivation.len() != layer.len() || lt.output.len() != layer.len() {
                return Err(Error::DimensionMismatch {
                    what: "trace layer output",
                    expected: layer.len(),
                    actual: lt.output.len(),
                });
            }
        }
        if target.len() != self.output_dim() {
            return Err(Error::DimensionMismatch {
                what: "target output",
                expected: self.output_dim(),
                actual: target.len(),
            });
        }
        Ok(())
    }
}
