//! Deterministic CSV harness over the qineq-core kernels: figure
//! generators, the box-example report, and the seeded self-test runner.

pub mod csvfmt;
pub mod figures;
pub mod selftest;
