//! Finite-volume solver for pressureless gas dynamics and related 2x2
//! systems whose solutions develop delta shocks.
//!
//! Each equation is advanced as a scalar conservation law whose flux is
//! discontinuous through the other variable, frozen at the start of the
//! step. The density flux handles interfaces where mass piles up; the
//! momentum flux is the Godunov flux of a convex discontinuous flux.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod flux;
pub mod grid;
pub mod model;
pub mod scheme1d;
pub mod scheme2d;
pub mod state;

pub use config::{FrictionFlux, Limiter, Order, SchemeConfig, TimeStep};
pub use diagnostics::{Background, DeltaMeasure, EntropyFunction, RunManifest};
pub use error::{DdfError, Result};
pub use grid::{Grid1D, Grid2D};
pub use model::{ModelKind, ModelSpec};
pub use scheme1d::{run_1d, RunOptions, RunOutput1D, RunStats, Snapshot1D};
pub use scheme2d::{run_2d, RunOutput2D, Snapshot2D};
pub use state::{State1D, State2D};
