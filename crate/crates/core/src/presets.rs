//! Hyperparameters and datasets for the four benchmark experiments.
//!
//! | preset  | layers           | lr    | epochs | data                       |
//! |---------|------------------|-------|--------|----------------------------|
//! | spirals | 16-32-64-32-2    | 2e-4  | 1000   | 193 points per spiral      |
//! | circles | 16-64-32-2       | 1e-5  | 1000   | 100 points per circle      |
//! | xor     | 4-8-16-32-1      | 1e-4  | 100    | 1000 points on [−1, 1]²    |
//! | wbc     | 16-2             | 1e-4  | 1000   | UCI breast-cancer file     |
//!
//! All presets use Softplus on every layer.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::activations::Activation;
use crate::datasets::{self, Dataset, MissingPolicy};
use crate::trainer::{TrainConfig, TrainerKind};
use crate::{Error, Result};

pub const DEFAULT_VALIDATION_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentPreset {
    Spirals,
    Circles,
    Xor,
    Wbc,
}

impl ExperimentPreset {
    pub const ALL: [ExperimentPreset; 4] = [Self::Spirals, Self::Circles, Self::Xor, Self::Wbc];

    pub fn name(self) -> &'static str {
        match self {
            Self::Spirals => "spirals",
            Self::Circles => "circles",
            Self::Xor => "xor",
            Self::Wbc => "wbc",
        }
    }

    pub fn layer_sizes(self) -> &'static [usize] {
        match self {
            Self::Spirals => &[16, 32, 64, 32, 2],
            Self::Circles => &[16, 64, 32, 2],
            Self::Xor => &[4, 8, 16, 32, 1],
            Self::Wbc => &[16, 2],
        }
    }

    pub fn learning_rate(self) -> f64 {
        match self {
            Self::Spirals => 2e-4,
            Self::Circles => 1e-5,
            Self::Xor => 1e-4,
            Self::Wbc => 1e-4,
        }
    }

    pub fn epochs(self) -> usize {
        match self {
            Self::Xor => 100,
            _ => 1000,
        }
    }

    pub fn config(self, seed: u64) -> TrainConfig {
        TrainConfig {
            layer_sizes: self.layer_sizes().to_vec(),
            activation: Activation::softplus(),
            learning_rate: self.learning_rate(),
            epochs: self.epochs(),
            seed,
            validation_fraction: DEFAULT_VALIDATION_FRACTION,
            trainer_kind: TrainerKind::Pinv,
            shuffle_each_epoch: true,
        }
    }

    /// Whether the dataset comes from a file rather than a generator.
    pub fn needs_data_file(self) -> bool {
        self == Self::Wbc
    }

    /// Builds the preset's dataset. `wbc_path` is required for [`Self::Wbc`]
    /// and ignored otherwise.
    pub fn dataset(self, seed: u64, wbc_path: Option<&Path>) -> Result<Dataset> {
        match self {
            Self::Spirals => datasets::gen_two_spirals(datasets::SPIRAL_POINTS_PER_CLASS, 0.0, seed),
            Self::Circles => datasets::gen_circles(
                datasets::CIRCLE_POINTS_PER_CLASS,
                datasets::CIRCLE_INNER_FACTOR,
                0.0,
                seed,
            ),
            Self::Xor => datasets::gen_xor(datasets::XOR_COUNT, seed),
            Self::Wbc => {
                let path = wbc_path.ok_or_else(|| {
                    Error::InvalidConfig("the wbc preset needs the UCI data file".into())
                })?;
                datasets::load_wbc_csv(path, MissingPolicy::DropRow)
            }
        }
    }
}

impl fmt::Display for ExperimentPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown preset `{s}`")))
    }
}
