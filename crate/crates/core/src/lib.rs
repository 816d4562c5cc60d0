//! Artinian Gorenstein algebras over the rationals.
//!
//! Given a presentation `Q[x1..xk]/I` of a finite-dimensional local algebra
//! this crate builds the multiplication table, certifies the Gorenstein
//! property, computes the nil-polynomial `P(u) = -ω(exp u)` attached to an
//! admissible projection together with its Blaschke data, extracts Macaulay
//! inverse systems from it, and decides or refutes isomorphism of two such
//! algebras by comparing their nil-polynomials up to linear changes of
//! coordinates.
//!
//! Everything is exact: scalars are arbitrary-precision rationals.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod invsys;
pub mod isocheck;
pub mod nilpoly;
pub mod polycore;

pub use error::{Error, Result};
