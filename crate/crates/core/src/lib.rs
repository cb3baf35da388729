//! Exact invariants of lattice polytopes.
//!
//! Everything in this crate is computed in arbitrary-precision integer or
//! rational arithmetic; there is no floating point anywhere. The crate is
//! `no_std` (with `alloc`); IO, file formats and the command line live in
//! the companion `polydefect` crate.
//!
//! The main entry points are [`LatticePolytope`], the Ehrhart machinery in
//! [`ehrhart`], the dual-defect invariants in [`defect`], and the box-point
//! decomposition for simplices in [`simplex_box`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod defect;
pub mod ehrhart;
pub mod error;
pub mod identities;
pub mod lattice;
pub mod polytope;
pub mod simplex_box;

pub use error::{Error, Result};
pub use lattice::{AffineLatticeChart, Int, IntMatrix, Rat};
pub use polytope::{Face, Facet, LatticePolytope};
