//! Exact-arithmetic engines for tensor-product multiplicities of simple Lie
//! algebras and for cluster algebras of geometric type.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; IO, JSON and the command line live in the
//! companion `lrtrop` crate.
//!
//! Modules, bottom-up:
//!
//! - [`rootsys`]: Cartan matrices, weights, reduced words, braid moves.
//! - [`tableaux`]: partitions and the Littlewood-Richardson tableau rule.
//! - [`tropical`]: geometric and min-plus transition maps between
//!   parametrizations attached to reduced words of the longest element.
//! - [`multiplicity`]: counting multiplicities through boundary constraints on
//!   parameter tuples, plus a Freudenthal/Racah oracle.
//! - [`minors`]: SL_n factorizations, minors, Dodgson and Plücker identities,
//!   total positivity.
//! - [`cluster`]: exchange matrices, Laurent polynomials, seeds, exchange
//!   graphs, finite-type classification and the Grassmannian model.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cluster;
mod error;
pub mod minors;
pub mod multiplicity;
pub mod rootsys;
pub mod tableaux;
pub mod tropical;

pub use error::{Error, Result};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;
