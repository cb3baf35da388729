//! Command-line companion to `polydefect-core`: polytope files, a small
//! construction grammar, invariant reports, identity sweeps, family
//! surveys, and seeded fuzzing.

pub mod commands;
pub mod construct;
pub mod format;
pub mod fuzz;
pub mod report;
