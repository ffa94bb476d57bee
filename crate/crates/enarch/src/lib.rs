//! File formats, run configuration, manifests and the `enarch` command line
//! on top of `enarch-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod diag;
pub mod formats;
pub mod hash;
pub mod manifest;
pub mod pipeline;

pub use enarch_core as core;
