//! File formats and command implementations behind the `sattrack` binary.
//!
//! Split out as a library so integration tests can drive the pipeline
//! without spawning processes.

pub mod commands;
pub mod config;
pub mod io;
