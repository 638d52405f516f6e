//! Exact integer arithmetic for the minimal genus problem on closed
//! oriented 4-manifolds.
//!
//! The library works with second homology as an integer lattice equipped
//! with its intersection form, and computes the minimal genus function
//! exactly where closed formulas or matching bound pairs determine it,
//! and as certified `[lower, upper]` intervals elsewhere.
//!
//! All arithmetic is checked 64-bit integer arithmetic (promoted to 128-bit
//! internally); overflow is reported as an error, never wrapped.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod bounds;
pub mod catalog;
pub mod formulas;
pub mod genus;
pub mod lattice;
pub mod profile;
pub mod reduction;
pub mod surfaces;
pub mod sw;

pub use formulas::GenusResult;
pub use lattice::{HomologyClass, IntersectionForm};
