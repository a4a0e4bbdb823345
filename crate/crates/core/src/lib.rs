//! Reproducing kernel Pontryagin spaces, generalized Schur functions and their
//! realizations, in the complex and the quaternionic setting.
//!
//! - [`indefinite`]: finite-dimensional Pontryagin spaces given by signature
//!   metrics, inertia, indefinite adjoints and defect factorizations.
//! - [`kernel_spaces`]: Hardy kernels on the disk, the right half-plane and
//!   regions cut out by a polynomial pair, kernel-section function algebra,
//!   resolvent operators, structural identities and negative-square counts.
//! - [`schur`]: colligations, the realized functions `S`, their kernels, and the
//!   construction of a colligation from an invariant model space.
//! - [`unified`]: `(a, b)` pairs, the regions they define, `R(a, b, alpha)`
//!   resolvents, and realizations and constructions in that setting.
//! - [`quaternion`]: quaternions, quaternionic matrices, slice power series and
//!   the star product.
//! - [`qschur`]: the half-space kernel, quaternionic colligations and their
//!   realized functions.
//! - [`suites`]: seeded numerical checks behind `verify-identities`.
//! - [`cli`]: the `krein-kernels` command-line front end and its file formats.
//!
//! Every randomized routine takes an explicit seed and runs on
//! [`rng::SplitMix64`], so results are reproducible across thread counts.

// Guards like `!(x > 0.0)` also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod indefinite;
pub mod kernel_spaces;
pub mod linalg;
pub mod poly;
pub mod qschur;
pub mod quaternion;
pub mod rng;
pub mod schur;
pub mod suites;
pub mod unified;

pub use error::{Error, Result};
