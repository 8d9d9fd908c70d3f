//! Exact-arithmetic toolkit for the Cayley-Dickson algebras `A_n = R^(2^n)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`element`], [`basis`], [`parse`]: elements, the doubling product, the
//!   involutions and bilinear forms, and the text grammar.
//! * [`linalg`]: exact rational matrices (rank, nullspace, determinant,
//!   eigen-kernels) plus a cyclic Jacobi solver for full symmetric spectra.
//! * [`analysis`]: annihilators, the quaternionic splitting attached to a
//!   doubly pure element, special couples and triples, and the eigenvalue
//!   criterion for zero divisors of the form `(a, b)`.
//! * [`catalog`] and [`suites`]: deterministic candidate searches with JSON
//!   lines / CSV export, and the seeded identity-verification suites.

pub mod analysis;
pub mod basis;
pub mod catalog;
pub mod element;
pub mod error;
pub mod linalg;
pub mod parse;
pub mod random;
pub mod rational;
pub mod suites;

pub use element::{
    associator, commutator, is_alternative, is_special, is_special_up_to_norm, CdElement,
};
pub use error::{CdError, Result};
pub use linalg::{FloatSpectrum, Matrix, OperatorMatrix, SubspaceBasis};
pub use parse::{format_element, parse_element};
pub use rational::Rat;
