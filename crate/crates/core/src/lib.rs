pub mod config;
pub mod descriptor;
pub mod error;
pub mod families;
pub mod invariants;
pub mod report;
pub mod sphere;
pub mod suite;
pub mod svg;

pub use error::{LcError, Result};
