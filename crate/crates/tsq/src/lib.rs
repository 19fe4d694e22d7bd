//! Numerical toolkit for estimating `tr(ρ^q)` and the quantum q-Tsallis entropy
//! with uniform Chebyshev approximations, matrix-level singular value
//! transformations, Hadamard tests and amplitude estimation, plus property
//! suites for Jensen-Tsallis divergence inequalities and executable entropy
//! reductions.
//!
//! Everything runs by exact dense simulation, so dimensions stay small
//! (at most 12 qubits in the circuit simulator).

pub mod chebapprox;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod ineqlab;
pub mod qcore;
pub mod qsvtkit;
pub mod reductions;
pub mod rng;

pub use error::{Error, Result};
