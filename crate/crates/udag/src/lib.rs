//! File formats, JSON output shapes and parallel drivers around `udag-core`.
//! The `udag` binary is a thin command-line layer over this crate.

pub mod data;
pub mod distribution;
pub mod dot;
pub mod error;
pub mod json;
pub mod oracle;
pub mod parallel;
pub mod text;

pub use error::{Error, Result};
