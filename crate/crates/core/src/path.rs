//! Piecewise-linear paths in the complex plane.
//!
//! A path with `m` segments is parametrized by `s ∈ [0, m]`; segment `i`
//! covers `[i, i + 1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    waypoints: Vec<Complex64>,
    samples_hint: usize,
}

impl PathSpec {
    pub fn new(waypoints: Vec<Complex64>, samples_hint: usize) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::domain("a path needs at least two waypoints"));
        }
        if waypoints
            .iter()
            .any(|w| !w.re.is_finite() || !w.im.is_finite())
        {
            return Err(Error::domain("waypoints must be finite"));
        }
        if waypoints.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::domain("consecutive waypoints must differ"));
        }
        if samples_hint == 0 {
            return Err(Error::domain("samples_hint must be positive"));
        }
        Ok(Self {
            waypoints,
            samples_hint,
        })
    }

    pub fn segment(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(vec![a, b], 16)
    }

    pub fn real_segment(a: f64, b: f64) -> Result<Self> {
        Self::segment(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    /// Closed polygon inscribed in the circle, traversed counter-clockwise.
    pub fn circle(center: Complex64, radius: f64, segments: usize) -> Result<Self> {
        if !(radius > 0.0) || segments < 3 {
            return Err(Error::domain(
                "circle needs a positive radius and >= 3 segments",
            ));
        }
        let mut w: Vec<Complex64> = (0..segments)
            .map(|k| center + Complex64::from_polar(radius, TAU * k as f64 / segments as f64))
            .collect();
        w.push(w[0]);
        Self::new(w, 4)
    }

    /// Closed axis-aligned rectangle from `lo` (lower-left) counter-clockwise.
    pub fn rectangle(lo: Complex64, hi: Complex64) -> Result<Self> {
        let w = vec![
            lo,
            Complex64::new(hi.re, lo.im),
            hi,
            Complex64::new(lo.re, hi.im),
            lo,
        ];
        Self::new(w, 16)
    }

    pub fn with_samples_hint(mut self, hint: usize) -> Result<Self> {
        if hint == 0 {
            return Err(Error::domain("samples_hint must be positive"));
        }
        self.samples_hint = hint;
        Ok(self)
    }

    pub fn reversed(&self) -> Self {
        let mut w = self.waypoints.clone();
        w.reverse();
        Self {
            waypoints: w,
            samples_hint: self.samples_hint,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &PathSpec) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::domain("paths do not join"));
        }
        let mut w = self.waypoints.clone();
        w.extend_from_slice(&other.waypoints[1..]);
        Self::new(w, self.samples_hint.max(other.samples_hint))
    }

    pub fn waypoints(&self) -> &[Complex64] {
        &self.waypoints
    }

    pub fn samples_hint(&self) -> usize {
        self.samples_hint
    }

    pub fn segments(&self) -> usize {
        self.waypoints.len() - 1
    }

    pub fn start(&self) -> Complex64 {
        self.waypoints[0]
    }

    pub fn end(&self) -> Complex64 {
        self.waypoints[self.waypoints.len() - 1]
    }

    /// Point at parameter `s`, clamped to `[0, segments]`.
    pub fn position(&self, s: f64) -> Complex64 {
        let m = self.segments();
        let s = s.clamp(0.0, m as f64);
        let i = (s.floor() as usize).min(m - 1);
        let t = s - i as f64;
        if t == 1.0 {
            return self.waypoints[i + 1];
        }
        self.waypoints[i] + (self.waypoints[i + 1] - self.waypoints[i]) * t
    }

    /// `dw/ds` on segment `i`.
    pub fn velocity(&self, i: usize) -> Complex64 {
        self.waypoints[i + 1] - self.waypoints[i]
    }
}
