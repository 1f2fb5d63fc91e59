//! Chebyshev series on an interval, built from samples at extrema nodes.
//!
//! Integration is carried out exactly in coefficient space, so an integrated
//! series differentiates back to its integrand up to rounding.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    lo: f64,
    hi: f64,
    coeffs: Vec<Complex64>,
}

impl ChebSeries {
    /// `n + 1` extrema nodes on `[lo, hi]`, in ascending order.
    pub fn nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        assert!(n >= 1, "need at least two nodes");
        let half = 0.5 * (hi - lo);
        (0..=n)
            .map(|j| {
                if j == 0 {
                    lo
                } else if j == n {
                    hi
                } else {
                    // 1 - cos(πj/n) = 2 sin²(πj/2n) avoids cancellation near lo
                    let s = (0.5 * PI * j as f64 / n as f64).sin();
                    lo + half * 2.0 * s * s
                }
            })
            .collect()
    }

    /// Interpolant through `values` sampled at [`ChebSeries::nodes`].
    pub fn from_values(lo: f64, hi: f64, values: &[Complex64]) -> Self {
        let n = values.len() - 1;
        assert!(n >= 1, "need at least two samples");
        // nodes(…)[j] sits at t = cos(π(n - j)/n); reverse to the usual ordering
        let f: Vec<Complex64> = values.iter().rev().copied().collect();
        let mut buf: Vec<Complex64> = Vec::with_capacity(2 * n);
        buf.extend_from_slice(&f);
        buf.extend(f[1..n].iter().rev());
        let mut planner = FftPlanner::<f64>::new();
        planner.plan_fft_forward(2 * n).process(&mut buf);
        let mut coeffs: Vec<Complex64> = buf[..=n].iter().map(|g| g / n as f64).collect();
        coeffs[0] /= 2.0;
        coeffs[n] /= 2.0;
        Self { lo, hi, coeffs }
    }

    pub fn from_coeffs(lo: f64, hi: f64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { lo, hi, coeffs }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_unit(&self, x: f64) -> f64 {
        (2.0 * x - self.lo - self.hi) / (self.hi - self.lo)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> Complex64 {
        let t = self.to_unit(x);
        let zero = Complex64::new(0.0, 0.0);
        let (mut b1, mut b2) = (zero, zero);
        for c in self.coeffs[1..].iter().rev() {
            let b0 = c + b1 * (2.0 * t) - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + b1 * t - b2
    }

    /// Indefinite integral vanishing at `lo`.
    pub fn integral(&self) -> Self {
        let c = &self.coeffs;
        let n = c.len();
        let get = |k: usize| c.get(k).copied().unwrap_or_default();
        let scale = 0.5 * (self.hi - self.lo);
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[1] = (get(0) - get(2) * 0.5) * scale;
        for (k, slot) in out.iter_mut().enumerate().skip(2) {
            *slot = (get(k - 1) - get(k + 1)) / (2.0 * k as f64) * scale;
        }
        // value at t = -1 is Σ (-1)^k C_k
        let mut at_lo = Complex64::new(0.0, 0.0);
        for (k, v) in out.iter().enumerate().skip(1) {
            if k % 2 == 0 {
                at_lo += v;
            } else {
                at_lo -= v;
            }
        }
        out[0] = -at_lo;
        Self {
            lo: self.lo,
            hi: self.hi,
            coeffs: out,
        }
    }

    /// Derivative series.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        if n == 1 {
            return Self::from_coeffs(self.lo, self.hi, vec![Complex64::new(0.0, 0.0)]);
        }
        let mut d = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + self.coeffs[k] * (2.0 * k as f64);
        }
        d[0] /= 2.0;
        d.truncate(n - 1);
        let scale = 2.0 / (self.hi - self.lo);
        Self {
            lo: self.lo,
            hi: self.hi,
            coeffs: d.into_iter().map(|v| v * scale).collect(),
        }
    }

    /// Drops trailing coefficients below `rel_tol` times the largest one.
    pub fn chop(&mut self, rel_tol: f64) {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let keep = self
            .coeffs
            .iter()
            .rposition(|c| c.norm() > rel_tol * scale)
            .map_or(1, |i| i + 1);
        self.coeffs.truncate(keep);
    }
}
