//! Exact kernels for the Weyl groups of extended A-series Kac-Moody algebras.
//!
//! The crate covers the full chain from a Dynkin diagram to Weyl-invariant
//! Calogero potentials:
//!
//! - [`dynkin`]: the `(A_n)_{-m}` diagrams, their Cartan matrices,
//!   bicolourations and Cartan eigendata.
//! - [`roots`]: root vectors in the simple-root basis, the Cartan form, the
//!   Lorentzian lattice embedding and bounded enumeration of real roots.
//! - [`weyl`]: reflections, Coxeter words as unimodular integer matrices,
//!   powers, orbits and finite-order detection.
//! - [`recur`]: minimal linear recurrences of orbit coefficients, their
//!   characteristic polynomials and roots, and numerically solved closed forms.
//! - [`invariants`]: the Kostant identity, Coxeter angles, and exact search for
//!   Weyl-invariant polynomials.
//! - [`calogero`]: the two formulations of the invariant potential (Diophantine
//!   sums and Coxeter orbit sums), their cross-matching, and closed-form
//!   evaluators built on [`special`].
//!
//! Everything that touches root coefficients is exact (`BigInt` / `BigRational`).
//! Floating point appears only in eigen data, angles, closed-form coefficients
//! and potential values.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calogero;
pub mod dynkin;
mod error;
mod hp;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod recur;
pub mod roots;
pub mod special;
pub mod weyl;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Node label of a Dynkin diagram (`-m, …, 0, 1, …, n`).
pub type Label = i64;
