//! Symmetric triads, intersections of real flag manifolds, and a matrix
//! oracle that certifies the exact answers numerically.
//!
//! The symbolic side ([`rootsys`], [`triads`], [`flags`]) works over exact
//! rationals. Points of a maximal abelian subspace are stored in units of
//! pi ([`triads::PiPoint`]), so regularity and lattice membership are
//! decided without rounding. The [`oracle`] builds concrete `su(m)` models
//! and checks the symbolic results with floating-point linear algebra.

pub mod error;
pub mod exact;
pub mod rootsys;
pub mod triads;
pub mod flags;
pub mod oracle;
pub mod cli;

pub use error::{Error, Result};
pub use exact::{ExactVector, Rational};
