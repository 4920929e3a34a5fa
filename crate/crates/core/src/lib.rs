//! Lattice discretizations of the free Dirac operator.
//!
//! Three discretizations are implemented: the naive symmetric-difference
//! operator, its Wilson-corrected version, and the staggered
//! (Kogut–Susskind) operator regrouped into `2^d` components on a lattice of
//! doubled spacing. Alongside the operators the crate provides brute-force
//! dense oracles, momentum-space symbols and dispersion relations, doubling
//! diagnostics, symbol-level continuum-limit rates, and the explicit
//! block-diagonalizations of the staggered continuum operator for `d = 2, 3`.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod clifford;
pub mod continuum;
pub mod diag;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod staggered;
pub mod symbols;

pub use error::{Error, Result};
