//! Feedforward networks trained without gradients.
//!
//! Neurons carry one weight and one bias per input. Training corrects each
//! `(w, b)` block with the Moore-Penrose pseudoinverse of `[input 1]`, pushes
//! targets backwards through inverse activations, and averages the inputs
//! each neuron would have needed into a target for the previous layer. A
//! gradient-descent trainer on the same architecture is included as a
//! baseline.
//!
//! ```
//! use pinvnet::{datasets, presets::ExperimentPreset, trainer};
//!
//! # fn main() -> pinvnet::Result<()> {
//! let data = datasets::gen_xor(200, 7)?;
//! let split = datasets::split(&data, 0.25, 7)?;
//! let mut config = ExperimentPreset::Xor.config(7);
//! config.epochs = 2;
//! let run = trainer::train(&split, &config)?;
//! assert_eq!(run.history.len(), 2);
//! # Ok(())
//! # }
//! ```

pub mod activations;
pub mod datasets;
mod error;
pub mod linalg;
pub mod network;
pub mod presets;
mod rng;
pub mod trainer;

pub use activations::{Activation, ActivationKind};
pub use datasets::{Dataset, SplitDataset};
pub use error::{Error, Result};
pub use network::{ForwardTrace, Layer, LayerTrace, Network, NeuronParams};
pub use trainer::{EpochMetrics, Evaluation, TrainConfig, TrainerKind};
