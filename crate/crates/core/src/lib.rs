//! Greedy sparse recovery under general perturbations.
//!
//! The crate bundles the three greedy pursuits with replacement (CoSaMP,
//! Subspace Pursuit and Iterative Hard Thresholding), an oracle
//! least-squares baseline, spectral and restricted-isometry tools, closed
//! form evaluators for the associated error guarantees, and a
//! deterministic Monte Carlo harness for the four simulation studies.
//!
//! Everything works on dense `nalgebra` matrices. Sparse vectors are
//! stored densely together with their support where it matters.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod matrix_analysis;
pub mod oracle;
pub mod pursuits;
pub mod sensing;
pub mod signal;
pub mod verify;

mod linalg;

pub use error::{Error, Result};

/// Dense real matrix used for Φ, Ψ, A, Δ and E.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense real column vector.
pub type Vector = nalgebra::DVector<f64>;
