#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod laws;
pub mod levy;
pub mod normalize;
pub mod quad;
pub mod rng;
pub mod root;
pub mod simulate;
pub mod stats;

pub use error::{Error, Result};
pub use levy::{HeavyTrafficFamily, JumpLaw, LevyModel, StablePart};
