//! Experiment harness, file formats and command-line support for
//! [`htsup_core`].

pub mod config;
pub mod error;
pub mod format;
pub mod harness;
pub mod model;

pub use config::{ExperimentConfig, Traffic};
pub use error::{Error, Result};
pub use model::ModelSpec;
