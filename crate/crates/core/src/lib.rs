//! Exact enumerative invariants of connected complex reductive groups.
//!
//! From a root system, a character lattice and the weights of a
//! representation, this crate computes the degree of a generic hyperplane
//! section, the intersection indices of the group's Chern classes with
//! hyperplane sections, and the Euler characteristic of a generic
//! hyperplane section. All arithmetic is exact.
//!
//! The Chern-class indices are computed two ways: by integrating graded
//! parts of a differential operator applied to the flag-variety degree
//! polynomial over the truncated weight polytope, and by summing
//! polarizations over a flag subdivision of that polytope.

pub mod cli;
pub mod indices;
pub mod linalg;
pub mod polyalg;
pub mod polytope;
pub mod quadrature;
pub mod rootsys;

pub use num_bigint::BigInt;

/// Arbitrary-precision rational; the only number type in the main paths.
pub type Rational = num_rational::BigRational;

pub use indices::{IndexError, IndexReport};
pub use polyalg::MultiPoly;
pub use polytope::{FlagChain, LatticeSpec, Polytope, Simplex};
pub use rootsys::{build_root_system, CartanLetter, RootSystem, WeightVector};
