//! Seed-parametrized towers `F_{n+1}(z) = ∫_0^z F_n(w) dw` with `F_1 = log S`.
//!
//! Towers are stored in singularity-split form `F_n = L_n + R_n`, where
//!
//! ```text
//! L_n(z) = z^{n-1}/(n-1)! · (log z - H_{n-1})
//! ```
//!
//! is the exact iterated integral of `log z` and `R_n` is analytic on the
//! domain. `R_1 = log(S(z)/z)` is interpolated on Chebyshev nodes and every
//! higher `R_n` is its exact integral in coefficient space.

mod path_integral;
mod seed;
mod tower;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use path_integral::path_integrate;
pub use seed::{Seed, SeedKind};
pub use tower::{build_tower, reconcile_polylog_tower, seed_log, singular_part, Tower};

/// Minimum gap between a tower domain and the first positive zero of its seed.
pub const DOMAIN_MARGIN: f64 = 0.01;

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::domain(format!(
                "[{lo}, {hi}] is not a proper interval"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// `points` equispaced values from `lo` to `hi` inclusive.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        match points {
            0 => Vec::new(),
            1 => vec![self.lo],
            _ => {
                let step = (self.hi - self.lo) / (points - 1) as f64;
                (0..points)
                    .map(|i| {
                        if i + 1 == points {
                            self.hi
                        } else {
                            self.lo + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}
