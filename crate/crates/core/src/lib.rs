//! Deligne 1-motives `[u: L -> G]` over the complex numbers, their Hodge,
//! finite-level and de Rham realizations, Cartier duality, and the four
//! Picard and Albanese 1-motives of seminormal curves.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod config;
pub mod curves;
pub mod duality;
pub mod error;
pub mod hodge;
pub mod iso;
pub mod motives;
pub mod numeric;
pub mod realizations;
pub mod relations;
pub mod report;
pub mod zlinalg;

pub use config::Config;
pub use error::{Error, Result};
