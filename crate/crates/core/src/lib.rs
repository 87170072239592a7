//! Exact computations with pointed commutative monoids presented as
//! quotients of affine lattice monoids, their weight-graded cyclic nerves
//! and Hochschild homology, and the toric squares built from fans.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `pctf-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cone;
pub mod error;
pub mod field;
pub mod homology;
pub mod intmat;
pub mod lattice;
pub mod monoid;
pub mod nerve;
pub mod saturation;
pub mod toric;

pub use error::{Error, Result};
pub use lattice::{Lattice, Vector};
