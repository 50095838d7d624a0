//! JSON form of [`LevyModel`].

use htsup_core::{JumpLaw, LevyModel, StablePart};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default)]
    pub drift: f64,
    #[serde(default)]
    pub sigma2: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jump: Option<JumpSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable: Option<StableSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum JumpSpec {
    Pareto { alpha: f64, x_min: f64 },
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableSpec {
    pub alpha: f64,
    pub beta: f64,
    pub scale: f64,
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<LevyModel> {
        let jump = self.jump.map(|j| match j {
            JumpSpec::Pareto { alpha, x_min } => JumpLaw::Pareto { alpha, x_min },
            JumpSpec::Exponential { rate } => JumpLaw::Exponential { rate },
        });
        let stable = self.stable.map(|s| StablePart { alpha: s.alpha, beta: s.beta, scale: s.scale });
        Ok(LevyModel::new(self.drift, self.sigma2, self.lambda, jump, stable)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let spec: ModelSpec =
            serde_json::from_str(&text).map_err(|source| Error::Parse { path: path.into(), source })?;
        spec.to_model().map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(spec)
    }
}

impl From<&LevyModel> for ModelSpec {
    fn from(m: &LevyModel) -> Self {
        ModelSpec {
            drift: m.drift,
            sigma2: m.sigma2,
            lambda: m.jump_intensity,
            jump: m.jump.map(|j| match j {
                JumpLaw::Pareto { alpha, x_min } => JumpSpec::Pareto { alpha, x_min },
                JumpLaw::Exponential { rate } => JumpSpec::Exponential { rate },
            }),
            stable: m.stable.map(|s| StableSpec { alpha: s.alpha, beta: s.beta, scale: s.scale }),
        }
    }
}
