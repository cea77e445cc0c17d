//! Exact symbolic layer for differential forms with polynomial coefficients.
//!
//! This crate is `no_std` (with `alloc`) and fully exact: coefficients are
//! arbitrary-precision rationals, so every algebraic identity certified here
//! (d∘d = 0, Cartan's formula, bar-differential squaring to zero, …) holds to
//! the last bit, not to a tolerance.
//!
//! Modules:
//! - [`forms`] — polynomials, exterior forms, vector fields on ℝⁿ and the
//!   operations d, ∧, i_X, L_X;
//! - [`formdsl`] — a small text syntax for forms with a parser and a canonical
//!   printer;
//! - [`bar`] — free graded-commutative differential algebras and the bar /
//!   two-sided Hochschild complexes built on them.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bar;
pub mod formdsl;
pub mod forms;

pub use forms::{Form, FormsError, Polynomial, Rational, VectorField};
