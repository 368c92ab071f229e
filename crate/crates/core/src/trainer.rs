//! Online training loop and evaluation metrics.
//!
//! Every epoch visits each training row once (in a freshly shuffled order
//! unless disabled), running a forward pass and one backward step per row.
//! After the epoch the network is scored on both partitions.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::activations::Activation;
use crate::datasets::{encode_target, Dataset, SplitDataset};
use crate::network::Network;
use crate::rng::{self, Stream};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrainerKind {
    /// Pseudoinverse block corrections.
    #[default]
    Pinv,
    /// Gradient-descent baseline.
    Gd,
}

impl std::str::FromStr for TrainerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pinv" => Ok(Self::Pinv),
            "gd" => Ok(Self::Gd),
            other => Err(Error::InvalidConfig(format!("unknown trainer kind `{other}`"))),
        }
    }
}

fn default_validation_fraction() -> f64 {
    0.25
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub layer_sizes: Vec<usize>,
    pub activation: Activation,
    pub learning_rate: f64,
    pub epochs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_validation_fraction")]
    pub validation_fraction: f64,
    #[serde(default)]
    pub trainer_kind: TrainerKind,
    #[serde(default = "default_true")]
    pub shuffle_each_epoch: bool,
}

impl TrainConfig {
    /// Checks that do not depend on the dataset.
    pub fn validate(&self) -> Result<()> {
        if self.layer_sizes.is_empty() || self.layer_sizes.contains(&0) {
            return Err(Error::InvalidConfig(format!(
                "layer_sizes must be non-empty and positive, got {:?}",
                self.layer_sizes
            )));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "validation_fraction must lie in (0, 1), got {}",
                self.validation_fraction
            )));
        }
        Ok(())
    }

    /// Checks against a dataset with `class_count` classes.
    pub fn check_against(&self, class_count: usize) -> Result<()> {
        let out = *self.layer_sizes.last().expect("validated non-empty");
        match out {
            1 if class_count == 2 => Ok(()),
            1 => Err(Error::ConfigMismatch(format!(
                "single-output network needs 2 classes, dataset has {class_count}"
            ))),
            n if n == class_count => Ok(()),
            n => Err(Error::ConfigMismatch(format!(
                "output layer has {n} neurons but dataset has {class_count} classes"
            ))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub train_mse: f64,
    pub val_mse: f64,
    pub val_accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub mse: f64,
    pub accuracy: f64,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub network: Network,
    pub history: Vec<EpochMetrics>,
}

/// Class predicted from a network output: argmax (first on ties) for two or
/// more outputs, `output ≥ 0.5` for a single output.
pub fn predict_class(output: &[f64]) -> usize {
    match output {
        [single] => usize::from(*single >= 0.5),
        _ => output
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) })
            .0,
    }
}

/// Mean over rows of the per-output mean squared error against the encoded
/// targets, and classification accuracy.
pub fn evaluate(net: &Network, data: &Dataset) -> Result<Evaluation> {
    if data.dim() != net.input_dim() {
        return Err(Error::DimensionMismatch {
            what: "dataset features vs model input",
            expected: net.input_dim(),
            actual: data.dim(),
        });
    }
    let width = net.output_dim();
    let mut sq = 0.0;
    let mut correct = 0usize;
    for (row, label) in data.rows() {
        let target = encode_target(label, data.class_count(), width).map_err(|_| {
            Error::DimensionMismatch {
                what: "model outputs vs dataset classes",
                expected: data.class_count(),
                actual: width,
            }
        })?;
        let out = net.predict(row)?;
        sq += out.iter().zip(&target).map(|(o, t)| (o - t).powi(2)).sum::<f64>() / width as f64;
        correct += usize::from(predict_class(&out) == label);
    }
    let n = data.len() as f64;
    Ok(Evaluation {
        mse: sq / n,
        accuracy: correct as f64 / n,
    })
}

pub fn train(data: &SplitDataset, config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    config.check_against(data.train.class_count())?;
    if config.trainer_kind == TrainerKind::Pinv && !config.activation.has_inverse() {
        return Err(Error::UnsupportedInverse(config.activation.name()));
    }
    let mut net = Network::init(
        &config.layer_sizes,
        data.train.dim(),
        config.activation,
        config.seed,
    )?;
    let width = net.output_dim();
    let targets = data
        .train
        .labels()
        .iter()
        .map(|&l| encode_target(l, data.train.class_count(), width))
        .collect::<Result<Vec<_>>>()?;

    let mut order: Vec<usize> = (0..data.train.len()).collect();
    let mut shuffle_rng = rng::seeded(config.seed, Stream::Shuffle);
    let mut history = Vec::with_capacity(config.epochs);
    for epoch in 1..=config.epochs {
        if config.shuffle_each_epoch {
            order.shuffle(&mut shuffle_rng);
        }
        for &i in &order {
            let (_, trace) = net.forward(&data.train.features()[i])?;
            match config.trainer_kind {
                TrainerKind::Pinv => net.backward(&trace, &targets[i], config.learning_rate)?,
                TrainerKind::Gd => net.gd_backward(&trace, &targets[i], config.learning_rate)?,
            }
        }
        let train_eval = evaluate(&net, &data.train)?;
        let val_eval = evaluate(&net, &data.validation)?;
        history.push(EpochMetrics {
            epoch,
            train_mse: train_eval.mse,
            val_mse: val_eval.mse,
            val_accuracy: val_eval.accuracy,
        });
    }
    Ok(TrainOutcome {
        network: net,
        history,
    })
}

/// Highest validation accuracy; the earliest epoch wins ties.
pub fn best_epoch(history: &[EpochMetrics]) -> Result<EpochMetrics> {
    history
        .iter()
        .copied()
        .reduce(|best, m| if m.val_accuracy > best.val_accuracy { m } else { best })
        .ok_or(Error::EmptyHistory)
}

/// `x` with ten significant digits, `%.10g` style.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if (-5..10).contains(&exp) {
        trim(&format!("{:.*}", (9 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

pub const HISTORY_HEADER: &str = "epoch,train_mse,val_mse,val_accuracy";

pub fn history_to_csv(history: &[EpochMetrics]) -> String {
    let mut out = String::from(HISTORY_HEADER);
    out.push('\n');
    for m in history {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            m.epoch,
            format_sig10(m.train_mse),
            format_sig10(m.val_mse),
            format_sig10(m.val_accuracy)
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    #[serde(rename = "final")]
    pub final_metrics: EpochMetrics,
    pub best: EpochMetrics,
    pub config: TrainConfig,
}

impl RunSummary {
    pub fn from_history(history: &[EpochMetrics], config: &TrainConfig) -> Result<Self> {
        Ok(Self {
            final_metrics: *history.last().ok_or(Error::EmptyHistory)?,
            best: best_epoch(history)?,
            config: config.clone(),
        })
    }
}
