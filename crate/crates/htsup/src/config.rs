//! Experiment configuration files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// One JSON object shared by every experiment subcommand. Unknown fields
/// are rejected and the seed is mandatory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_list: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_list: Option<Vec<f64>>,
    #[serde(default = "defaults::n_samples", deserialize_with = "count")]
    pub n_samples: usize,
    /// Truncation horizon in units of the row's time scale.
    #[serde(default = "defaults::c_horizon")]
    pub c_horizon: f64,
    /// Grid step in units of the row's time scale.
    #[serde(default = "defaults::step_fraction")]
    pub step_fraction: f64,
    #[serde(default = "defaults::tol")]
    pub tol: f64,
    /// Truncation error budget for early stopping.
    #[serde(default = "defaults::eps")]
    pub eps: f64,
    #[serde(default)]
    pub brownian_bridge: bool,
    #[serde(default = "defaults::reference_samples", deserialize_with = "count")]
    pub reference_samples: usize,
    #[serde(default = "defaults::reference_horizon")]
    pub reference_horizon: f64,
    #[serde(default = "defaults::reference_step")]
    pub reference_step: f64,
    /// Cache for an empirical reference law, one value per line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_csv: Option<PathBuf>,
    #[serde(default = "defaults::coupled_paths", deserialize_with = "count")]
    pub coupled_paths: usize,
    #[serde(default = "defaults::t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default = "defaults::x_grid")]
    pub x_grid: Vec<f64>,
}

mod defaults {
    pub fn n_samples() -> usize {
        10_000
    }
    pub fn c_horizon() -> f64 {
        64.0
    }
    pub fn step_fraction() -> f64 {
        1e-4
    }
    pub fn tol() -> f64 {
        1e-10
    }
    pub fn eps() -> f64 {
        1e-3
    }
    pub fn reference_samples() -> usize {
        100_000
    }
    pub fn reference_horizon() -> f64 {
        htsup_core::simulate::FUNCTIONAL_HORIZON
    }
    pub fn reference_step() -> f64 {
        htsup_core::simulate::FUNCTIONAL_STEP
    }
    pub fn coupled_paths() -> usize {
        10_000
    }
    pub fn t_grid() -> Vec<f64> {
        vec![1.0, 4.0, 16.0]
    }
    pub fn x_grid() -> Vec<f64> {
        vec![4.0, 8.0, 16.0]
    }
}

/// Counts may be written as integers or as integral floats such as `1e5`.
fn count<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<usize, D::Error> {
    let x = f64::deserialize(d)?;
    if x >= 0.0 && x.fract() == 0.0 && x <= 9.007_199_254_740_992e15 {
        Ok(x as usize)
    } else {
        Err(serde::de::Error::custom(format!("expected a nonnegative integer count, found {x}")))
    }
}

/// Traffic parameters of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Traffic {
    /// Increasing toward 1.
    Rho(Vec<f64>),
    /// Drain excess over the input mean, decreasing toward 0.
    Drain(Vec<f64>),
}

impl ExperimentConfig {
    pub fn minimal(seed: u64) -> Self {
        serde_json::from_value(serde_json::json!({ "seed": seed })).expect("defaults are valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// The config with every default spelled out.
    pub fn normalized_json(&self) -> String {
        crate::format::to_json(self)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if let Some(m) = &self.model {
            if let Err(e) = m.to_model() {
                return fail(format!("model: {e}"));
            }
        }
        if self.rho_list.is_some() && self.a_list.is_some() {
            return fail("rho_list and a_list are mutually exclusive".into());
        }
        if let Some(list) = &self.rho_list {
            for (i, &r) in list.iter().enumerate() {
                if !(r > 0.0 && r < 1.0) {
                    return fail(format!("rho_list[{i}]: {r} is not in (0, 1)"));
                }
                if i > 0 && r <= list[i - 1] {
                    return fail(format!("rho_list[{i}]: values must increase toward 1"));
                }
            }
        }
        if let Some(list) = &self.a_list {
            for (i, &a) in list.iter().enumerate() {
                if !(a > 0.0 && a.is_finite()) {
                    return fail(format!("a_list[{i}]: {a} is not positive"));
                }
                if i > 0 && a >= list[i - 1] {
                    return fail(format!("a_list[{i}]: values must decrease toward 0"));
                }
            }
        }
        let positive = [
            ("c_horizon", self.c_horizon),
            ("step_fraction", self.step_fraction),
            ("tol", self.tol),
            ("reference_horizon", self.reference_horizon),
            ("reference_step", self.reference_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return fail(format!("{name}: {v} is not positive"));
            }
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return fail(format!("eps: {} is not in (0, 1)", self.eps));
        }
        for (name, v) in [("n_samples", self.n_samples), ("reference_samples", self.reference_samples)] {
            if v == 0 {
                return fail(format!("{name}: must be at least 1"));
            }
        }
        for (name, grid) in [("t_grid", &self.t_grid), ("x_grid", &self.x_grid)] {
            for (i, &v) in grid.iter().enumerate() {
                if !(v > 0.0 && v.is_finite()) || (i > 0 && v <= grid[i - 1]) {
                    return fail(format!("{name}[{i}]: grid must be positive and increasing"));
                }
            }
        }
        Ok(())
    }

    pub fn model_spec(&self) -> Result<ModelSpec> {
        self.model.ok_or_else(|| Error::Config("model: required for this command".into()))
    }

    pub fn traffic(&self) -> Result<Traffic> {
        match (&self.rho_list, &self.a_list) {
            (Some(r), None) => Ok(Traffic::Rho(r.clone())),
            (None, Some(a)) => Ok(Traffic::Drain(a.clone())),
            _ => Err(Error::Config("one of rho_list or a_list is required".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"seed": 1}"#).unwrap();
        assert_eq!(cfg.n_samples, 10_000);
        assert_eq!(cfg.c_horizon, 64.0);
        assert_eq!(cfg.tol, 1e-10);
        assert_eq!(cfg, ExperimentConfig::minimal(1));
    }

    #[test]
    fn seed_is_mandatory() {
        let e = ExperimentConfig::from_json("{}").unwrap_err().to_string();
        assert!(e.contains("seed"), "{e}");
    }

    #[test]
    fn rho_at_one_names_the_field() {
        let e = ExperimentConfig::from_json(r#"{"seed": 1, "rho_list": [0.9, 1.0]}"#).unwrap_err().to_string();
        assert!(e.contains("rho_list[1]"), "{e}");
        let e = ExperimentConfig::from_json(r#"{"seed": 1, "tol": 0}"#).unwrap_err().to_string();
        assert!(e.contains("tol"), "{e}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let e = ExperimentConfig::from_json(r#"{"seed": 1, "tolerance": 1e-9}"#).unwrap_err().to_string();
        assert!(e.contains("tolerance"), "{e}");
    }

    #[test]
    fn float_counts() {
        let cfg = ExperimentConfig::from_json(r#"{"seed": 1, "n_samples": 1e5}"#).unwrap();
        assert_eq!(cfg.n_samples, 100_000);
        assert!(ExperimentConfig::from_json(r#"{"seed": 1, "n_samples": 2.5}"#).is_err());
    }

    #[test]
    fn normalized_form_is_a_fixed_point() {
        let text = r#"{"seed": 7, "rho_list": [0.9, 0.99],
            "model": {"lambda": 1, "jump": {"kind": "exponential", "rate": 1}}}"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        let once = cfg.normalized_json();
        let again = ExperimentConfig::from_json(&once).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.normalized_json(), once);
    }
}
