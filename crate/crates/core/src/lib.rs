//! Exact computer algebra for the affine Lie algebra sl(2)^ at fractional level.
//!
//! Everything is computed over the rationals; there is no floating point
//! anywhere in this crate. The main building blocks are:
//!
//! - [`series`]: truncated formal series in `q` and in `(q, z)` with rational
//!   exponent shifts, the universal carrier of characters,
//! - [`theta`]: theta functions, reduced theta functions, Dedekind eta and
//!   Euler products, and the reciprocal of the Jacobi triple product,
//! - [`weights`]: levels, Kac labels, conformal weights, central charges and
//!   Kac tables,
//! - [`characters`]: Verma, Kac, irreducible, admissible and staggered
//!   characters, string functions, and character decompositions,
//! - [`structure`]: Loewy diagrams for Verma and Kac modules and staggered
//!   module descriptors,
//! - [`branching`]: coset branching functions and branching-rule verification,
//! - [`phi`]: the residue map from affine characters to Virasoro characters
//!   and the matching functor on Loewy diagrams,
//! - [`uea`]: normal ordering in the universal enveloping algebra, weight
//!   space bases, singular vector search and the staggered coupling solver.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON and the command line live in
//! the companion `affchar-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branching;
pub mod characters;
pub mod linalg;
pub mod phi;
pub mod rat;
pub mod series;
pub mod structure;
pub mod theta;
pub mod uea;
pub mod weights;

pub use rat::Rat;
