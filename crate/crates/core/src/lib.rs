//! Circular and elliptic Clausen hierarchies.
//!
//! A hierarchy is generated from a seed function `S` by `F_1 = log S` and
//! base-point integration `F_{n+1}(z) = ∫_0^z F_n(w) dw`. The CL and SL
//! components are `A(n; z) = 2 Re F_n(z)` and `B(n; z) = -2 Im F_n(z)`.
//!
//! Modules:
//! - [`theta`]: Jacobi θ₁ by sine series and by product, the normalized seed
//!   θ₁/θ₁′(0), its logarithmic derivative and the trigonometric limit.
//! - [`circular`]: unit-circle polylogarithms, the phase-normalized master
//!   `i^{-n} Li_n(e^{iθ})`, Clausen values and boundary constants.
//! - [`hierarchy`]: seeds, towers in singularity-split form, path integrals.
//! - [`phase`]: branch-continuous argument tracking, winding and nodal jumps.
//! - [`generating`]: truncated generating series and their residuals.
//! - [`verification`]: named verification suites with JSON reports.

pub mod chebyshev;
pub mod circular;
mod error;
pub mod generating;
pub mod hierarchy;
pub mod path;
pub mod phase;
pub mod quadrature;
pub mod theta;
pub mod verification;

pub use error::{Error, Result};
pub use generating::GeneratingSlice;
pub use hierarchy::{Interval, Seed, SeedKind, Tower};
pub use num_complex::Complex64;
pub use path::PathSpec;
pub use phase::PhaseProfile;
pub use theta::{TauParameter, ThetaSettings};
pub use verification::{SuiteConfig, SuiteReport};
