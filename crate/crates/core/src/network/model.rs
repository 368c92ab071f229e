//! Versioned JSON model files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "input_dim": 2,
//!   "layers": [
//!     { "activation": "softplus", "clamp_epsilon": 0.05,
//!       "neurons": [ { "weights": [0.1, -0.2], "biases": [0.3, 0.4] } ] }
//!   ]
//! }
//! ```
//!
//! `leaky_relu` layers also carry `"slope"`. Floats are written in shortest
//! round-trip form, so parse → serialize reproduces every parameter bitwise.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Layer, Network, NeuronParams};
use crate::activations::{Activation, ActivationKind};
use crate::{Error, Result};

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    version: u32,
    input_dim: usize,
    layers: Vec<LayerFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerFile {
    activation: String,
    clamp_epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slope: Option<f64>,
    neurons: Vec<NeuronFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NeuronFile {
    weights: Vec<f64>,
    biases: Vec<f64>,
}

fn activation_from_file(layer: &LayerFile) -> Result<Activation> {
    let base = match (layer.activation.as_str(), layer.slope) {
        ("leaky_relu", Some(slope)) => Activation::leaky_relu(slope)?,
        (name, _) => name.parse()?,
    };
    base.with_clamp_epsilon(layer.clamp_epsilon)
}

impl Network {
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            version: MODEL_VERSION,
            input_dim: self.input_dim,
            layers: self
                .layers
                .iter()
                .map(|l| LayerFile {
                    activation: l.activation.name().to_owned(),
                    clamp_epsilon: l.activation.clamp_epsilon(),
                    slope: match l.activation.kind() {
                        ActivationKind::LeakyRelu { slope } => Some(slope),
                        _ => None,
                    },
                    neurons: l
                        .neurons
                        .iter()
                        .map(|n| NeuronFile {
                            weights: n.weights.clone(),
                            biases: n.biases.clone(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("model is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.version != MODEL_VERSION {
            return Err(Error::UnsupportedModelVersion(file.version));
        }
        let layers = file
            .layers
            .into_iter()
            .map(|l| {
                let activation = activation_from_file(&l)?;
                let neurons = l
                    .neurons
                    .into_iter()
                    .map(|n| NeuronParams::new(n.weights, n.biases))
                    .collect::<Result<Vec<_>>>()?;
                Layer::new(neurons, activation)
            })
            .collect::<Result<Vec<_>>>()?;
        Network::new(file.input_dim, layers)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
