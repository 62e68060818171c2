//! Dense matrix logarithm via a fixed-point iteration on successive
//! matrix exponentials, with exact multiplication-count accounting.
//!
//! The solver iterates `X_{n+1} = A e^{-X_n} - I + X_n`, whose fixed points
//! are branches of `ln A`. The crate also carries the scaling-and-squaring
//! exponential used inside the iteration, complex-scalar convergence-region
//! analysis for the deviation map `e^{-λ} + λ - 1`, independent test oracles
//! (Jacobi eigendecomposition, Taylor log series) and a benchmark harness
//! with reproducible seeding.
//!
//! The crate is `no_std` compatible (requires `alloc`); all IO lives in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bench;
pub mod expm;
pub mod logm;
pub mod matrix;
pub mod oracle;
pub mod scalar;

pub use expm::{expm, plan_exp, ExpPlan};
pub use logm::{
    fixed_point_logm, gershgorin_bounds, init_linear, FixedPointConfig, Initializer,
    IterationReport, LogmResult, SpectralBounds,
};
pub use matrix::{CostCategory, CostLedger, Matrix, MatrixError};
