//! Exact lambda-bracket calculus on vertex-algebra modules.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point anywhere in the crate. The main pieces:
//!
//! - [`rat`]: the scalar field, a thin wrapper around `num_rational::BigRational`.
//! - [`lambda`]: divided-power lambda monomials with rational exponents, truncated
//!   series algebra, the generalized formal Fourier transform and its integral
//!   operators.
//! - [`virasoro`]: Verma modules over the Virasoro algebra, Kac-table weights,
//!   the exact singular-vector solver, and the Feigin-Fuchs evaluation module.
//! - [`affine`]: finite-dimensional Lie-algebra data (sl2 built in), exact
//!   Clebsch-Gordan decompositions, Sugawara weights and the level-k fusion
//!   admissibility test.
//! - [`intertwiner`]: the bracket/product calculus for intertwining operators,
//!   the seven structure identities as executable checks, mode reconstruction,
//!   and the fusion-constraint extraction for minimal models.
//! - [`suite`]: the randomized verification suites driven by the CLI.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command-line
//! front end live in the companion `lambda-fusion-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod rat;
pub mod linalg;
pub mod poly;
pub mod lambda;
pub mod virasoro;
pub mod affine;
pub mod intertwiner;
pub mod suite;

pub use rat::Rat;
