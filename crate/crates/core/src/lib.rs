//! Exact computations around symmetric powers of tautological bundles on
//! Hilbert schemes of points on surfaces.
//!
//! Everything is exact: integers and rationals from `num`, never floats.
//!
//! * [`combinat`]: compositions, partitions, multi-index maps and their orbits.
//! * [`polyjet`]: truncated polynomials on `(C^2)^n`, diagonal ideals and jets.
//! * [`tautops`]: higher differences, restriction kernels and graded oracles.
//! * [`toeplitz`]: the binomial Toeplitz matrices and their nondegeneracy.
//! * [`symrep`]: anti-invariant dimensions and the explicit wedge-model checks.
//! * [`rroch`]: surface lattice models, Riemann-Roch and Euler characteristics.
//! * [`suites`]: named verification suites shared by the CLI.

pub mod combinat;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod polyjet;
pub mod rroch;
pub mod suites;
pub mod symrep;
pub mod tautops;
pub mod toeplitz;

mod error;

pub use error::{Error, Result};
