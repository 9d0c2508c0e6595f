//! Overlap-based inequality kernels over finite-dimensional inner-product
//! spaces: Cauchy-Schwarz and its auxiliary-state improvements, uncertainty
//! product/sum bounds, Eckart overlap bounds, and decay-probability dynamics
//! for discrete spectra and the free Gaussian packet.
//!
//! The crate is `no_std` (with `alloc`); all values are immutable after
//! construction and every operation is a pure function of its inputs.

#![no_std]
// Guards use the negated form `!(x > 0.0)` so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod metric;
pub mod operator;
pub mod state;
pub mod uncertainty;

pub use bounds::{AuxPair, BoundReport, TriangleSign};
pub use error::{Error, Result};
pub use metric::{MetricKind, SpaceMetric};
pub use operator::Operator;
pub use state::State;

pub type C64 = num_complex::Complex64;

/// States below this norm are treated as degenerate (zero).
pub const EPS_NORM: f64 = 1e-12;
/// Entrywise tolerance for the hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Slack on satisfied/gap decisions in bound reports.
pub const TOL_BOUND: f64 = 1e-10;
/// Relative tolerance for orthogonality preconditions.
pub const TOL_ORTH: f64 = 1e-8;
/// Largest moment order served by repeated matrix-vector application.
pub const K_MAX: usize = 16;
