#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` rejects NaN; `x <= 0.0` would not

//! Equimeasurable rearrangements and mean-oscillation functionals for
//! one-dimensional functions.
//!
//! The library compiles closed-form descriptors (log-power bumps,
//! cosines, indicators, affine pieces, well-spaced series) to exact step
//! functions on graded meshes, computes decreasing and symmetric
//! decreasing rearrangements, and measures mean oscillation globally
//! (BMO seminorm) and at small scales (VMO modulus). A catalog of named
//! test functions with closed-form oracles drives convergence
//! experiments that separate bounded behaviour from continuous
//! behaviour of the rearrangement map.
//!
//! Start from the runnable examples: `cargo run --release --example
//! bmo_basics` and friends, or the `meanosc` binary for file-driven use.

pub mod catalog;
pub mod cli;
mod error;
pub mod funcspace;
mod interval;
pub mod oscillation;
pub mod properties;
pub mod rearrange;
pub mod seminorm;

pub use error::{Error, Result};
pub use interval::Interval;
