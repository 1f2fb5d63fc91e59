//! Named verification suites producing machine-readable reports.
//!
//! Every check records the measured quantity, the bound it is held to and
//! the direction of the comparison. Sampling is driven by a ChaCha8 stream
//! seeded from [`SuiteConfig::rng_seed`], so reports are reproducible byte
//! for byte.

mod suites;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Suite names in execution order for `all`.
pub const SUITE_NAMES: [&str; 7] = [
    "theta-cross",
    "backbone",
    "degeneration",
    "boundary",
    "phase",
    "generating",
    "clausen-values",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub rng_seed: u64,
    /// Random `(z, τ)` pairs for the series/product comparison.
    pub theta_samples: usize,
    /// Random samples for each quasi-periodicity identity.
    pub quasi_samples: usize,
    /// Interior grid points for finite-difference sweeps.
    pub grid_points: usize,
    /// Starting interpolation resolution for towers.
    pub resolution: usize,
    /// Finite-difference step.
    pub fd_step: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            rng_seed: 0x5eed_c1a5,
            theta_samples: 200,
            quasi_samples: 100,
            grid_points: 50,
            resolution: 16,
            fd_step: 1e-4,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_samples == 0 || self.quasi_samples == 0 {
            return Err(Error::Config("sample counts must be positive".into()));
        }
        if self.grid_points < 3 {
            return Err(Error::Config("grid_points must be at least 3".into()));
        }
        if self.resolution < 16 {
            return Err(Error::Config("resolution must be at least 16".into()));
        }
        if !(self.fd_step > 0.0 && self.fd_step < 1e-2) {
            return Err(Error::Config("fd_step must lie in (0, 1e-2)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub measured: f64,
    pub bound: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn at_most(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(id, measured, bound, Relation::AtMost)
    }

    pub fn at_least(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(id, measured, bound, Relation::AtLeast)
    }

    fn new(id: impl Into<String>, measured: f64, bound: f64, relation: Relation) -> Self {
        let holds = match relation {
            Relation::AtMost => measured <= bound,
            Relation::AtLeast => measured >= bound,
        };
        Self {
            id: id.into(),
            measured,
            bound,
            relation,
            pass: measured.is_finite() && holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub checks: Vec<Check>,
    pub overall_pass: bool,
}

impl SuiteReport {
    pub fn new(suite_name: impl Into<String>, checks: Vec<Check>) -> Self {
        let overall_pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Self {
            suite_name: suite_name.into(),
            checks,
            overall_pass,
        }
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs one suite by name.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let checks = match name {
        "theta-cross" => suites::theta_cross(config)?,
        "backbone" => suites::backbone(config)?,
        "degeneration" => suites::degeneration(config)?,
        "boundary" => suites::boundary(config)?,
        "phase" => suites::phase(config)?,
        "generating" => suites::generating(config)?,
        "clausen-values" => suites::clausen_values(config)?,
        other => return Err(Error::Config(format!("unknown suite '{other}'"))),
    };
    Ok(SuiteReport::new(name, checks))
}

/// Runs all suites in [`SUITE_NAMES`] order.
pub fn run_all(config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, config)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest vertical distance from a point to the fitted line.
    pub max_dev: f64,
}

/// Ordinary least-squares line through `(x, y)` points.
pub fn slope_fit(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::DegenerateFit("non-finite point".into()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let spread = points.iter().map(|p| (p.0 - mx).abs()).fold(0.0, f64::max);
    if spread <= 1e-12 * mx.abs().max(1.0) {
        return Err(Error::DegenerateFit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_dev = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).abs())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        slope,
        intercept,
        max_dev,
    })
}
