//! Open-loop mechanical tracking of LEO satellites by a two-axis
//! alt-azimuth antenna mount, and the resulting sub-THz/THz pointing loss.
//!
//! The crate simulates a controller that commands a mount with realistic
//! constraints (command latency, per-axis velocity/acceleration limits,
//! serial axes, trapezoidal motion) to follow a satellite pass, records the
//! pointing error at every simulation step, converts it to link-budget
//! pointing loss, and optimizes the per-axis target velocities with a
//! derivative-free pattern search.
//!
//! Everything here is pure computation over in-memory data; the companion
//! `sattrack-cli` crate carries file formats and the command-line front-end.
//! The crate is `no_std`-compatible (with `alloc`) when built without the
//! default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod link;
pub mod mount;
pub mod optimizer;
pub mod sim;
pub mod trajectory;

pub use error::{Error, Result};
pub use link::{AntennaConfig, LinkLosses, LossSeries};
pub use mount::{MotionPlan, MountConfig};
pub use optimizer::{ApsConfig, OptimizationReport};
pub use sim::{AxisOrder, PhaseLabel, ProfileKind, SimulationTrace, TraceRecord, VelocityProfile};
pub use trajectory::{AngularSample, PassTrajectory};
