//! One-copy distillability of Bell-diagonal qutrit pairs.
//!
//! The crate builds, for every Bell-diagonal two-qutrit state with a
//! non-positive partial transpose, a Schmidt-rank-2 eigenvector of `ρ^Γ` at its
//! smallest eigenvalue. From that vector it derives the distillability witness
//! `W_φ = (|φ><φ|)^Γ`, local rank-2 filters onto an entangled qubit pair, and
//! the white-noise thresholds of both detection and filtering.
//!
//! Module map:
//!
//! * [`linalg`]: dense complex matrices, partial transpose, Jacobi
//!   eigensolver, Schmidt decomposition.
//! * [`weyl`]: Weyl–Heisenberg operators, Bell vectors, Fourier,
//!   controlled-sum, Bell unitary and flip.
//! * [`simplex`]: Bell-diagonal states, partial-transpose blocks,
//!   classification and seeded samplers.
//! * [`witness`]: the eigenvector construction and the witness operator.
//! * [`filter`]: local filtering and noise thresholds.
//! * [`report`]: JSON/CSV reports and the analysis, sweep, sampling and
//!   verification drivers behind the `qutrit-distill` binary.

pub mod error;
pub mod filter;
pub mod linalg;
pub mod report;
pub mod simplex;
pub mod weyl;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use simplex::{DensityMatrix, PtClass, SimplexCoefficients};
pub use weyl::{Dimension, WeylIndex};
