//! JSON model configuration.
//!
//! Two kinds of model file:
//!
//! ```json
//! {"kind": "h-triple", "alpha": 1.0, "beta": 0.0,
//!  "atoms": [{"pos": 0.0, "mass": 1.0}], "slabs": []}
//! ```
//!
//! declares a representation triple directly, while
//!
//! ```json
//! {"kind": "nu-atomic", "atoms": [{"pos": -1.0, "mass": 0.5},
//!                                 {"pos": 1.0, "mass": 0.5}]}
//! ```
//!
//! declares the atomic spectral measure of a rank-one operator model.
//! Unknown keys are hard errors so that typos do not silently change a
//! run.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::herglotz::HerglotzTriple;
use crate::measure::{Atom, RealMeasure, Slab};
use crate::rankone::RankOneModel;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    pub pos: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlabConfig {
    pub a: f64,
    pub b: f64,
    pub height: f64,
}

/// Parsed model file, prior to validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default)]
    pub atoms: Vec<AtomConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slabs: Vec<SlabConfig>,
}

/// A validated model: either a triple, or an atomic measure with the
/// operator model it generates.
#[derive(Debug, Clone)]
pub enum Model {
    Triple(HerglotzTriple),
    NuAtomic {
        nu: RealMeasure,
        model: RankOneModel,
    },
}

impl Model {
    /// The Herglotz function attached to the model: the triple itself,
    /// or the function with `-1/h` equal to the Cauchy transform of the
    /// atomic measure.
    pub fn herglotz(&self) -> Result<HerglotzTriple, ConfigError> {
        match self {
            Model::Triple(h) => Ok(h.clone()),
            Model::NuAtomic { nu, .. } => HerglotzTriple::from_atomic_measure(nu)
                .map_err(|e| ConfigError::Invalid(e.to_string())),
        }
    }

    pub fn rank_one(&self) -> Option<&RankOneModel> {
        match self {
            Model::Triple(_) => None,
            Model::NuAtomic { model, .. } => Some(model),
        }
    }
}

/// Parses UTF-8 JSON text into a config; syntax problems carry
/// line/column context from the JSON parser, unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<ModelConfig, ConfigError> {
    Ok(serde_json::from_str(text)?)
}

/// Serializes a config back to JSON; `parse_config(emit_config(c)) == c`.
pub fn emit_config(config: &ModelConfig) -> String {
    serde_json::to_string_pretty(config).expect("config serializes")
}

impl ModelConfig {
    /// Validates the config and builds the model.
    pub fn build(&self) -> Result<Model, ConfigError> {
        let atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.pos, a.mass))
            .collect();
        match self.kind.as_str() {
            "h-triple" => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| ConfigError::Invalid("h-triple requires alpha".into()))?;
                let beta = self
                    .beta
                    .ok_or_else(|| ConfigError::Invalid("h-triple requires beta".into()))?;
                let slabs: Vec<Slab> = self
                    .slabs
                    .iter()
                    .map(|s| Slab::new(s.a, s.b, s.height))
                    .collect();
                let mu = RealMeasure::new(atoms, slabs)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                let h = HerglotzTriple::new(alpha, beta, mu)
                    .map_err(|e| ConfigError::Invalid(format!("alpha/beta: {e}")))?;
                Ok(Model::Triple(h))
            }
            "nu-atomic" => {
                if self.alpha.is_some() || self.beta.is_some() {
                    return Err(ConfigError::Invalid(
                        "nu-atomic does not take alpha or beta".into(),
                    ));
                }
                if !self.slabs.is_empty() {
                    return Err(ConfigError::Invalid("nu-atomic does not take slabs".into()));
                }
                let nu =
                    RealMeasure::atomic(atoms).map_err(|e| ConfigError::Invalid(e.to_string()))?;
                let model = RankOneModel::from_measure(&nu)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                Ok(Model::NuAtomic { nu, model })
            }
            other => Err(ConfigError::Invalid(format!(
                "unknown kind {other:?}: expected \"h-triple\" or \"nu-atomic\""
            ))),
        }
    }
}
