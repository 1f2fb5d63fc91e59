//! Truncated generating series `𝓕_N(w; λ) = Σ_{n=1}^{N} F_n(w) λ^{n-1}`.
//!
//! Termwise differentiation with `F_{n+1}′ = F_n` gives the exact identity
//!
//! ```text
//! ∂_w 𝓕_N = F_1′ + λ 𝓕_N - λ^N F_N
//! ```
//!
//! so [`GeneratingSlice::residual`] vanishes up to finite-difference error,
//! while [`GeneratingSlice::uncorrected_residual`], which drops `F_1′` and the
//! truncation term, does not.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hierarchy::Tower;

/// 𝓕_N for one tower and one value of λ.
#[derive(Debug, Clone, Copy)]
pub struct GeneratingSlice<'a> {
    tower: &'a Tower,
    order: u32,
    lambda: Complex64,
}

/// Residuals of the CL and SL projections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionResiduals {
    pub cl: f64,
    pub sl: f64,
}

impl<'a> GeneratingSlice<'a> {
    pub fn new(tower: &'a Tower, order: u32, lambda: Complex64) -> Result<Self> {
        if order == 0 || order > tower.max_order() {
            return Err(Error::domain(format!(
                "truncation order {order} outside 1..={}",
                tower.max_order()
            )));
        }
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::domain("lambda must be finite"));
        }
        Ok(Self {
            tower,
            order,
            lambda,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// `Σ_{n=1}^{N} F_n(w) λ^{n-1}`.
    pub fn eval(&self, w: f64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for n in 1..=self.order {
            sum += self.tower.eval(n, w)? * pow;
            pow *= self.lambda;
        }
        Ok(sum)
    }

    fn derivative(&self, w: f64, h: f64) -> Result<Complex64> {
        if !(h > 0.0) {
            return Err(Error::domain("finite-difference step must be positive"));
        }
        Ok((self.eval(w + h)? - self.eval(w - h)?) / (2.0 * h))
    }

    /// `F_1′(w) - λ^N F_N(w)`, the terms the bare ODE leaves out.
    fn correction(&self, w: f64) -> Result<Complex64> {
        let f1_prime = self.tower.seed().log_derivative(Complex64::new(w, 0.0))?;
        Ok(f1_prime - self.lambda.powu(self.order) * self.tower.eval(self.order, w)?)
    }

    /// `∂_w 𝓕_N - λ 𝓕_N - F_1′ + λ^N F_N` with a central difference of step `h`.
    pub fn residual(&self, w: f64, h: f64) -> Result<Complex64> {
        Ok(self.uncorrected_residual(w, h)? - self.correction(w)?)
    }

    /// `∂_w 𝓕_N - λ 𝓕_N`, which equals `F_1′ - λ^N F_N` rather than zero.
    pub fn uncorrected_residual(&self, w: f64, h: f64) -> Result<Complex64> {
        Ok(self.derivative(w, h)? - self.lambda * self.eval(w)?)
    }

    fn real_lambda(&self) -> Result<f64> {
        if self.lambda.im != 0.0 {
            return Err(Error::domain("CL/SL projections need a real lambda"));
        }
        Ok(self.lambda.re)
    }

    /// `(𝓐, 𝓑)` with `𝓕_N = 𝓐/2 - i𝓑/2`.
    pub fn clsl(&self, w: f64) -> Result<(f64, f64)> {
        self.real_lambda()?;
        let f = self.eval(w)?;
        Ok((2.0 * f.re, -2.0 * f.im))
    }

    /// Corrected projection residuals
    /// `∂𝓐 - λ𝓐 - 2 Re F_1′ + λ^N A(N)` and `∂𝓑 - λ𝓑 + 2 Im F_1′ + λ^N B(N)`.
    pub fn projection_residuals(&self, w: f64, h: f64) -> Result<ProjectionResiduals> {
        self.real_lambda()?;
        let r = self.residual(w, h)?;
        Ok(ProjectionResiduals {
            cl: 2.0 * r.re,
            sl: -2.0 * r.im,
        })
    }

    /// `∂𝓐 - λ𝓐` and `∂𝓑 - λ𝓑` without the correction terms.
    pub fn uncorrected_projection_residuals(&self, w: f64, h: f64) -> Result<ProjectionResiduals> {
        let lambda = self.real_lambda()?;
        let (a_plus, b_plus) = self.clsl(w + h)?;
        let (a_minus, b_minus) = self.clsl(w - h)?;
        let (a, b) = self.clsl(w)?;
        Ok(ProjectionResiduals {
            cl: (a_plus - a_minus) / (2.0 * h) - lambda * a,
            sl: (b_plus - b_minus) / (2.0 * h) - lambda * b,
        })
    }
}
