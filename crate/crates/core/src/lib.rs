//! Exact combinatorics of the affine Hecke algebra at `q = ∞`.
//!
//! The crate computes the nonsymmetric Macdonald polynomials `E_λ(∞, t)` through the
//! Hecke-operator recursion, their Satake images `𝓔_λ` for a p-adic group datum, and
//! unramified principal-series matrix coefficients. Everything is exact: coefficients are
//! Laurent polynomials with rational coefficients in half-powers of the Hecke parameters.
//!
//! The layers, bottom up:
//!
//! * [`rootdata`]: finite and affine root systems, lattices, parameter orbits.
//! * [`weyl`]: the extended affine Weyl group, lengths, reduced words, `w_λ`.
//! * [`coeffs`]: parameter scalars and the sparse group algebra.
//! * [`hecke`]: the polynomial representation `T_0, …, T_n, X_μ`.
//! * [`macdonald`]: `E_λ`, the normalization `j_λ`, and the two limit oracles.
//! * [`satake`]: the `𝔱`-specialized side, volumes, `δ_P` and matrix coefficients.
//! * [`verify`]: named invariant suites shared by the CLI and the tests.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod coeffs;
mod error;
pub mod hecke;
mod linalg;
pub mod macdonald;
pub mod rootdata;
pub mod satake;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};

/// Exact rational numbers used for realizations, pairings and coefficients.
pub type Rat = num_rational::BigRational;
