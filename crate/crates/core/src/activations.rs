//! Activation functions with forward, inverse and derivative maps.
//!
//! Pseudoinverse training pushes targets backwards through the *inverse* of
//! each activation, so only activations whose inverse is defined on the whole
//! real line can be trained that way. Softplus is the exception we accept: its
//! inverse needs `y > 0`, and targets below `clamp_epsilon` are floored before
//! inversion (one-hot zeros would otherwise map to −∞).
//!
//! `Tanh` is available for forward evaluation and the gradient-descent
//! baseline only; [`Activation::invert`] rejects it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub const DEFAULT_CLAMP_EPSILON: f64 = 0.05;
pub const DEFAULT_LEAKY_SLOPE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActivationKind {
    Identity,
    Softplus,
    LeakyRelu { slope: f64 },
    Tanh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Activation {
    kind: ActivationKind,
    clamp_epsilon: f64,
}

impl Activation {
    pub const fn identity() -> Self {
        Self::from_kind(ActivationKind::Identity)
    }

    pub const fn softplus() -> Self {
        Self::from_kind(ActivationKind::Softplus)
    }

    pub const fn tanh() -> Self {
        Self::from_kind(ActivationKind::Tanh)
    }

    /// Leaky ReLU with negative-side slope in `(0, 1)`.
    pub fn leaky_relu(slope: f64) -> Result<Self> {
        if !(slope > 0.0 && slope < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "leaky_relu slope must lie in (0, 1), got {slope}"
            )));
        }
        Ok(Self::from_kind(ActivationKind::LeakyRelu { slope }))
    }

    const fn from_kind(kind: ActivationKind) -> Self {
        Self {
            kind,
            clamp_epsilon: DEFAULT_CLAMP_EPSILON,
        }
    }

    /// Replaces the Softplus inversion floor.
    pub fn with_clamp_epsilon(mut self, clamp_epsilon: f64) -> Result<Self> {
        if !(clamp_epsilon > 0.0 && clamp_epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "clamp_epsilon must be a positive finite number, got {clamp_epsilon}"
            )));
        }
        self.clamp_epsilon = clamp_epsilon;
        Ok(self)
    }

    pub fn kind(&self) -> ActivationKind {
        self.kind
    }

    pub fn clamp_epsilon(&self) -> f64 {
        self.clamp_epsilon
    }

    /// Config-file name of this activation.
    pub fn name(&self) -> &'static str {
        match self.kind {
            ActivationKind::Identity => "identity",
            ActivationKind::Softplus => "softplus",
            ActivationKind::LeakyRelu { .. } => "leaky_relu",
            ActivationKind::Tanh => "tanh",
        }
    }

    pub fn has_inverse(&self) -> bool {
        !matches!(self.kind, ActivationKind::Tanh)
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        match self.kind {
            ActivationKind::Identity => x,
            // ln(1 + eˣ) without overflow for large x.
            ActivationKind::Softplus => x.max(0.0) + (-x.abs()).exp().ln_1p(),
            ActivationKind::LeakyRelu { slope } => {
                if x >= 0.0 {
                    x
                } else {
                    slope * x
                }
            }
            ActivationKind::Tanh => x.tanh(),
        }
    }

    #[inline]
    pub fn invert(&self, y: f64) -> Result<f64> {
        match self.kind {
            ActivationKind::Identity => Ok(y),
            ActivationKind::Softplus => {
                let y = y.max(self.clamp_epsilon);
                // ln(eʸ − 1) = y + ln(1 − e⁻ʸ)
                Ok(y + (-(-y).exp_m1()).ln())
            }
            ActivationKind::LeakyRelu { slope } => Ok(if y >= 0.0 { y } else { y / slope }),
            ActivationKind::Tanh => Err(Error::UnsupportedInverse("tanh")),
        }
    }

    #[inline]
    pub fn derivative(&self, x: f64) -> f64 {
        match self.kind {
            ActivationKind::Identity => 1.0,
            ActivationKind::Softplus => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
            ActivationKind::LeakyRelu { slope } => {
                if x >= 0.0 {
                    1.0
                } else {
                    slope
                }
            }
            ActivationKind::Tanh => {
                let t = x.tanh();
                1.0 - t * t
            }
        }
    }
}

impl Default for Activation {
    fn default() -> Self {
        Self::softplus()
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// Config files name activations by string; non-default slopes and clamp
// floors are only carried by model files.
impl Serialize for Activation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Activation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Self::identity()),
            "softplus" => Ok(Self::softplus()),
            "leaky_relu" => Self::leaky_relu(DEFAULT_LEAKY_SLOPE),
            "tanh" => Ok(Self::tanh()),
            other => Err(Error::UnknownActivation(other.to_owned())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN_2: f64 = std::f64::consts::LN_2;

    #[test]
    fn apply_examples() {
        let sp = Activation::softplus();
        assert!((sp.apply(0.0) - LN_2).abs() < 1e-15);
        // 50 + ln(1 + e⁻⁵⁰) = 50.000000000000000000000192… (50-digit reference)
        let v = sp.apply(50.0);
        assert!(v.is_finite());
        assert!((v - 50.0).abs() < 1e-13);
        assert_eq!(sp.apply(1000.0), 1000.0);
        let lr = Activation::leaky_relu(0.01).unwrap();
        assert!((lr.apply(-2.0) + 0.02).abs() < 1e-15);
        assert_eq!(Activation::identity().apply(-3.5), -3.5);
    }

    #[test]
    fn invert_examples() {
        let sp = Activation::softplus();
        assert!(sp.invert(LN_2).unwrap().abs() < 1e-15);

        let v = sp.invert(1.0).unwrap();
        // ln(e − 1), 50-digit reference
        assert!((v - 0.541_324_854_612_918_1).abs() < 1e-15);
        assert!((sp.apply(v) - 1.0).abs() < 1e-15);

        // Floored at clamp_epsilon = 0.05: ln(e^0.05 − 1) = −2.97062810905737710…
        let floor = sp.invert(0.0).unwrap();
        assert!((floor + 2.970_628_109_057_377).abs() < 1e-12);
        assert_eq!(sp.invert(-7.0).unwrap(), floor);
    }

    #[test]
    fn tanh_has_no_inverse() {
        let t = Activation::tanh();
        assert!(!t.has_inverse());
        assert!(matches!(t.invert(0.3), Err(Error::UnsupportedInverse("tanh"))));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Activation::softplus().derivative(0.0), 0.5);
        assert_eq!(Activation::identity().derivative(7.0), 1.0);
        assert_eq!(Activation::leaky_relu(0.01).unwrap().derivative(-1.0), 0.01);
        assert!(Activation::softplus().derivative(-800.0) >= 0.0);
        assert_eq!(Activation::softplus().derivative(800.0), 1.0);
    }

    #[test]
    fn leaky_slope_must_be_in_unit_interval() {
        assert!(Activation::leaky_relu(0.0).is_err());
        assert!(Activation::leaky_relu(1.0).is_err());
        assert!(Activation::leaky_relu(f64::NAN).is_err());
    }

    #[test]
    fn clamp_epsilon_must_be_positive() {
        assert!(Activation::softplus().with_clamp_epsilon(0.0).is_err());
        assert!(Activation::softplus().with_clamp_epsilon(-1.0).is_err());
        let a = Activation::softplus().with_clamp_epsilon(0.1).unwrap();
        assert_eq!(a.clamp_epsilon(), 0.1);
    }

    #[test]
    fn names_round_trip() {
        for name in ["identity", "softplus", "leaky_relu", "tanh"] {
            let a: Activation = name.parse().unwrap();
            assert_eq!(a.name(), name);
        }
        assert!(matches!(
            "sigmoid".parse::<Activation>(),
            Err(Error::UnknownActivation(_))
        ));
    }
}
