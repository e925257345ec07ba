//! Bohr-Sommerfeld groupoids of the Poisson pencil `π_t` on `CP_n`.
//!
//! The crate is layered: [`groupoid`] holds the generic discrete-groupoid
//! contract and checkers, [`bs`] the lattice groupoid itself, [`sheu`] the
//! comparison groupoids and isomorphisms, [`convolution`] the twisted
//! convolution algebras, and [`poisson`] a numerical layer that checks the
//! underlying Poisson geometry and Lie theory.

// `!(r <= tol)` is deliberate: NaN residuals must count as failures.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity, clippy::needless_range_loop)]

pub mod bs;
pub mod convolution;
pub mod ext_int;
pub mod groupoid;
pub mod poisson;
pub mod sheu;
pub mod suites;

pub use ext_int::ExtInt;
pub use groupoid::{DiscreteGroupoid, GroupoidError};
