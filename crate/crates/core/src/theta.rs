//! Jacobi θ₁ with period 1 in `z` and nome `q = e^{iπτ}`.
//!
//! Zeros sit on the lattice `ℤ + τℤ`. Two evaluation paths are provided:
//!
//! ```text
//! θ₁(z|τ) = 2 Σ_{n≥0} (-1)^n q^{(n+1/2)²} sin((2n+1)πz)
//!         = 2 q^{1/4} sin(πz) Π_{m≥1} (1 - q^{2m})(1 - q^{2m} e^{2πiz})(1 - q^{2m} e^{-2πiz})
//! ```
//!
//! The two are computed independently so each can check the other.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest accepted `Im τ`.
pub const TAU_MIN: f64 = 0.05;

/// Minimum lattice distance for log-derivative and argument evaluation.
pub const ZERO_GUARD: f64 = 1e-6;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point of the upper half-plane together with its nome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TauRepr", into = "TauRepr")]
pub struct TauParameter {
    tau: Complex64,
    q: Complex64,
}

#[derive(Serialize, Deserialize)]
struct TauRepr {
    re: f64,
    im: f64,
}

impl TryFrom<TauRepr> for TauParameter {
    type Error = Error;
    fn try_from(r: TauRepr) -> Result<Self> {
        TauParameter::new(Complex64::new(r.re, r.im))
    }
}

impl From<TauParameter> for TauRepr {
    fn from(t: TauParameter) -> Self {
        TauRepr {
            re: t.tau.re,
            im: t.tau.im,
        }
    }
}

impl TauParameter {
    /// Rejects non-finite input and `Im τ < TAU_MIN`.
    pub fn new(tau: Complex64) -> Result<Self> {
        if !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::domain("tau must be finite"));
        }
        if tau.im < TAU_MIN {
            return Err(Error::domain(format!(
                "Im tau = {} is below tau_min = {TAU_MIN}",
                tau.im
            )));
        }
        Ok(Self {
            tau,
            q: (I * PI * tau).exp(),
        })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn q_abs(&self) -> f64 {
        (-PI * self.tau.im).exp()
    }

    /// `q^e = e^{iπτe}` on the principal branch of the exponent.
    pub fn nome_power(&self, e: f64) -> Complex64 {
        (I * PI * self.tau * e).exp()
    }

    /// Distance from `z` to the nearest point of `ℤ + τℤ`.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let tr = self.tau - self.tau.re.round();
        let k = (z.im / tr.im).round();
        let w = z - tr * k;
        let w = w - w.re.round();
        let mut best = f64::INFINITY;
        for a in -1..=1 {
            for b in -1..=1 {
                let d = (w - a as f64 - tr * b as f64).norm();
                best = best.min(d);
            }
        }
        best
    }
}

/// Series truncation control.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaSettings {
    /// Tail bound relative to the largest retained term.
    pub truncation_eps: f64,
    pub max_terms: usize,
}

impl Default for ThetaSettings {
    fn default() -> Self {
        Self {
            truncation_eps: 1e-16,
            max_terms: 256,
        }
    }
}

impl ThetaSettings {
    pub fn new(truncation_eps: f64, max_terms: usize) -> Result<Self> {
        let s = Self {
            truncation_eps,
            max_terms,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_eps > 0.0 && self.truncation_eps.is_finite()) {
            return Err(Error::Config("truncation_eps must be positive".into()));
        }
        if self.max_terms < 4 {
            return Err(Error::Config("max_terms must be at least 4".into()));
        }
        Ok(())
    }
}

fn check_strip(z: Complex64, tau: &TauParameter) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("z must be finite"));
    }
    if z.im.abs() > 2.0 * tau.tau.im {
        return Err(Error::domain(format!(
            "|Im z| = {} exceeds the strip bound 2 Im tau = {}",
            z.im.abs(),
            2.0 * tau.tau.im
        )));
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Kernel {
    Sine,
    /// d/dz of the sine kernel: (2n+1)π cos((2n+1)πz).
    Cosine,
}

/// `2 Σ (-1)^n q^{(n+1/2)²} k_n(z)` with a super-geometric tail bound.
fn sine_series(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
    kernel: Kernel,
) -> Result<Complex64> {
    settings.validate()?;
    let t = tau.tau.im;
    let y = z.im.abs();
    let weight = |n: usize| match kernel {
        Kernel::Sine => 1.0,
        Kernel::Cosine => (2 * n + 1) as f64 * PI,
    };
    // log of the a-priori bound U_n on |term n|
    let log_bound = |n: usize| {
        let h = n as f64 + 0.5;
        (2.0 * weight(n)).ln() - PI * t * h * h + (2 * n + 1) as f64 * PI * y
    };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_term: f64 = 0.0;
    for n in 0..settings.max_terms {
        let h = n as f64 + 0.5;
        let odd = (2 * n + 1) as f64;
        let base = tau.tau * (h * h);
        let e_plus = (I * PI * (base + z * odd)).exp();
        let e_minus = (I * PI * (base - z * odd)).exp();
        let k = match kernel {
            Kernel::Sine => (e_plus - e_minus) * Complex64::new(0.0, -0.5),
            Kernel::Cosine => (e_plus + e_minus) * (0.5 * odd * PI),
        };
        let term = if n % 2 == 0 { k * 2.0 } else { -k * 2.0 };
        if !term.re.is_finite() || !term.im.is_finite() {
            return Err(Error::domain("theta series term overflowed"));
        }
        sum += term;
        max_term = max_term.max(term.norm());

        let ratio = (log_bound(n + 2) - log_bound(n + 1)).exp();
        if ratio < 1.0 {
            let tail = log_bound(n + 1).exp() / (1.0 - ratio);
            if tail <= settings.truncation_eps * max_term {
                return Ok(sum);
            }
        }
    }
    Err(Error::Truncation {
        terms: settings.max_terms,
    })
}

/// θ₁(z|τ) from the sine q-series.
pub fn theta1_series(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<Complex64> {
    check_strip(z, tau)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    sine_series(z, tau, settings, Kernel::Sine)
}

/// ∂_z θ₁(z|τ) from the term-wise differentiated series.
pub fn theta1_derivative(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<Complex64> {
    check_strip(z, tau)?;
    sine_series(z, tau, settings, Kernel::Cosine)
}

/// θ₁(z|τ) from the truncated triple product.
pub fn theta1_product(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<Complex64> {
    settings.validate()?;
    check_strip(z, tau)?;
    let prefactor = tau.nome_power(0.25) * (PI * z).sin() * 2.0;
    if prefactor == Complex64::new(0.0, 0.0) {
        return Ok(prefactor);
    }
    let e_plus = (I * 2.0 * PI * z).exp();
    let e_minus = (-I * 2.0 * PI * z).exp();
    let growth = (2.0 * PI * z.im.abs()).exp();
    let q2 = tau.q_abs().powi(2);

    let mut prod = Complex64::new(1.0, 0.0);
    for m in 1..=settings.max_terms {
        let qm = tau.nome_power(2.0 * m as f64);
        prod *= (1.0 - qm) * (1.0 - qm * e_plus) * (1.0 - qm * e_minus);
        // |log(1-u)| ≤ |u|/(1-|u|) summed over the three factors of every m' > m
        let lead = growth * q2.powi(m as i32 + 1);
        if lead < 1.0 {
            let tail = 3.0 * lead / ((1.0 - q2) * (1.0 - lead));
            if tail <= settings.truncation_eps {
                return Ok(prefactor * prod);
            }
        }
    }
    Err(Error::Truncation {
        terms: settings.max_terms,
    })
}

/// θ₁′(0|τ) = 2π q^{1/4} Π (1 - q^{2m})³.
pub fn theta1_prime_zero(tau: &TauParameter, settings: &ThetaSettings) -> Result<Complex64> {
    settings.validate()?;
    let q2 = tau.q_abs().powi(2);
    let mut prod = Complex64::new(1.0, 0.0);
    for m in 1..=settings.max_terms {
        let f = 1.0 - tau.nome_power(2.0 * m as f64);
        prod *= f * f * f;
        let lead = q2.powi(m as i32 + 1);
        let tail = 3.0 * lead / ((1.0 - q2) * (1.0 - lead));
        if tail <= settings.truncation_eps {
            return Ok(tau.nome_power(0.25) * prod * (2.0 * PI));
        }
    }
    Err(Error::Truncation {
        terms: settings.max_terms,
    })
}

/// θ₁′(0|τ) = 2π Σ (-1)^n (2n+1) q^{(n+1/2)²}.
pub fn theta1_prime_zero_series(tau: &TauParameter, settings: &ThetaSettings) -> Result<Complex64> {
    sine_series(Complex64::new(0.0, 0.0), tau, settings, Kernel::Cosine)
}

/// θ̃₁ = θ₁/θ₁′(0), so that θ̃₁(z) = z + O(z³).
pub fn theta1_normalized(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<Complex64> {
    Ok(theta1_series(z, tau, settings)? / theta1_prime_zero(tau, settings)?)
}

/// θ̃₁′/θ̃₁ = θ₁′/θ₁, refused within [`ZERO_GUARD`] of the lattice.
pub fn theta1_log_derivative(
    z: Complex64,
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<Complex64> {
    if tau.lattice_distance(z) < ZERO_GUARD {
        return Err(Error::near_zero(z, ZERO_GUARD));
    }
    Ok(theta1_derivative(z, tau, settings)? / theta1_series(z, tau, settings)?)
}

/// Sup over the grid of |θ̃₁(x|τ) - sin(πx)/π|.
pub fn degeneration_error(
    grid: &[f64],
    tau: &TauParameter,
    settings: &ThetaSettings,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(format!("grid point {x} outside (0, 1)")));
        }
        let v = theta1_normalized(Complex64::new(x, 0.0), tau, settings)?;
        worst = worst.max((v - (PI * x).sin() / PI).norm());
    }
    Ok(worst)
}
