//! Multi-objective mobile damped wave optimization for quantum control.
//!
//! The crate is organized around five pieces:
//!
//! - [`optimizer`]: the damped-wave engine, Pareto bookkeeping and the bounded repository.
//! - [`decision`]: TOPSIS post-selection over a final repository.
//! - [`quantum`]: state/density-matrix algebra, the three control problems, spline
//!   upsampling of control samples, and time propagation.
//! - [`objectives`]: deviation, energy and smoothness objectives plus analytic benchmarks.
//! - [`harness`]: configuration, seeded runs, file outputs and reporting.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example schaffer_front` is a
//! good starting point.

pub mod decision;
pub mod error;
pub mod harness;
pub mod objectives;
pub mod optimizer;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
