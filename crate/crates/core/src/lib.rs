//! Smallest-gap statistics of two-dimensional Coulomb gases at the
//! determinantal temperature.
//!
//! The crate samples eigenvalues of four exactly solvable random normal
//! matrix models, extracts the `n^{3/4}`-rescaled nearest-neighbour gaps,
//! and provides the limiting objects they are compared against: the
//! equilibrium data `(S, rho, J)` of each potential, the limiting gap laws,
//! the Poisson intensity of the gap process, finite-`n` correlation kernels
//! and the erfc edge kernel with its first correction.
//!
//! Module map:
//!
//! * [`linalg`] dense complex linear algebra (QR, Hessenberg, eigenvalues).
//! * [`ensembles`] seeded samplers for the matrix models.
//! * [`gapstats`] the `≺` order, gap events and smallest pairwise gaps.
//! * [`theory`] potentials, droplets, `J` constants and limit laws.
//! * [`kernels`] correlation kernels, `erfc` edge kernels, Fischer checks.
//! * [`stats`] histograms, KS distance and Poisson goodness of fit.

// Negated comparisons are used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensembles;
pub mod error;
pub mod gapstats;
pub mod kernels;
pub mod linalg;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
pub use num_complex::Complex64;
