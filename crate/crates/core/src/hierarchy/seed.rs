use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::theta::{
    theta1_log_derivative, theta1_prime_zero, theta1_series, TauParameter, ThetaSettings,
    ZERO_GUARD,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    /// `S(z) = 1 - e^{iz}`.
    Polylog,
    /// `S(z) = 2 sin(πz)`.
    Circular,
    /// `S(z) = θ̃₁(z|τ)`.
    Elliptic,
}

impl std::fmt::Display for SeedKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeedKind::Polylog => "polylog",
            SeedKind::Circular => "circular",
            SeedKind::Elliptic => "elliptic",
        })
    }
}

impl std::str::FromStr for SeedKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polylog" => Ok(SeedKind::Polylog),
            "circular" => Ok(SeedKind::Circular),
            "elliptic" => Ok(SeedKind::Elliptic),
            other => Err(Error::Config(format!("unknown seed kind '{other}'"))),
        }
    }
}

/// Seed function of a hierarchy, `F_1 = log S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seed {
    kind: SeedKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<TauParameter>,
}

impl Seed {
    pub fn polylog() -> Self {
        Self {
            kind: SeedKind::Polylog,
            tau: None,
        }
    }

    pub fn circular() -> Self {
        Self {
            kind: SeedKind::Circular,
            tau: None,
        }
    }

    pub fn elliptic(tau: TauParameter) -> Self {
        Self {
            kind: SeedKind::Elliptic,
            tau: Some(tau),
        }
    }

    pub fn kind(&self) -> SeedKind {
        self.kind
    }

    pub fn tau(&self) -> Option<&TauParameter> {
        self.tau.as_ref()
    }

    fn theta_tau(&self) -> &TauParameter {
        self.tau.as_ref().expect("elliptic seed carries tau")
    }

    /// `S′(0)`.
    pub fn s_prime_0(&self) -> Complex64 {
        match self.kind {
            SeedKind::Polylog => -I,
            SeedKind::Circular => Complex64::new(TAU, 0.0),
            SeedKind::Elliptic => Complex64::new(1.0, 0.0),
        }
    }

    /// First positive real zero of `S`.
    pub fn first_zero(&self) -> f64 {
        match self.kind {
            SeedKind::Polylog => TAU,
            SeedKind::Circular | SeedKind::Elliptic => 1.0,
        }
    }

    /// Distance from `z` to the nearest zero of `S`.
    pub fn zero_distance(&self, z: Complex64) -> f64 {
        match self.kind {
            SeedKind::Polylog => {
                let k = (z.re / TAU).round();
                (z - TAU * k).norm()
            }
            SeedKind::Circular => (z - z.re.round()).norm(),
            SeedKind::Elliptic => self.theta_tau().lattice_distance(z),
        }
    }

    /// `S(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.ratio(z)? * z)
    }

    /// `S(z)/z`, equal to `S′(0)` at the origin.
    pub fn ratio(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(self.s_prime_0());
        }
        Ok(match self.kind {
            // 1 - e^{iz} = -2i e^{iz/2} sin(z/2), free of cancellation at small z
            SeedKind::Polylog => -2.0 * I * (0.5 * I * z).exp() * (0.5 * z).sin() / z,
            SeedKind::Circular => 2.0 * (PI * z).sin() / z,
            SeedKind::Elliptic => {
                let s = ThetaSettings::default();
                let tau = self.theta_tau();
                theta1_series(z, tau, &s)? / (theta1_prime_zero(tau, &s)? * z)
            }
        })
    }

    /// `S′/S`, the derivative of `F_1`.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64> {
        if self.zero_distance(z) < ZERO_GUARD {
            return Err(Error::near_zero(z, ZERO_GUARD));
        }
        Ok(match self.kind {
            SeedKind::Polylog => 0.5 * ((0.5 * z).cos() / (0.5 * z).sin() + I),
            SeedKind::Circular => PI * (PI * z).cos() / (PI * z).sin(),
            SeedKind::Elliptic => {
                theta1_log_derivative(z, self.theta_tau(), &ThetaSettings::default())?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ratio_is_continuous_at_origin() {
        let seeds = [
            Seed::polylog(),
            Seed::circular(),
            Seed::elliptic(TauParameter::from_parts(0.3, 1.5).unwrap()),
        ];
        for s in seeds {
            let r = s.ratio(c(1e-7, 0.0)).unwrap();
            assert!((r - s.s_prime_0()).norm() < 1e-6, "{:?}", s.kind());
        }
    }

    #[test]
    fn seed_values() {
        let z = c(0.7, 0.1);
        let p = Seed::polylog().eval(z).unwrap();
        assert!((p - (1.0 - (I * z).exp())).norm() < 1e-15);
        let q = Seed::circular().eval(z).unwrap();
        assert!((q - 2.0 * (PI * z).sin()).norm() < 1e-15);
    }

    #[test]
    fn log_derivatives_match_finite_differences() {
        let seeds = [
            Seed::polylog(),
            Seed::circular(),
            Seed::elliptic(TauParameter::from_parts(0.3, 1.5).unwrap()),
        ];
        let h = 1e-5;
        for s in seeds {
            let z = c(0.4, 0.05);
            let fd = ((s.eval(z + h).unwrap()).ln() - (s.eval(z - h).unwrap()).ln()) / (2.0 * h);
            assert!(
                (fd - s.log_derivative(z).unwrap()).norm() < 1e-8,
                "{:?}",
                s.kind()
            );
        }
        assert!(Seed::circular().log_derivative(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn zero_distances() {
        assert!((Seed::polylog().zero_distance(c(6.0, 0.0)) - (TAU - 6.0)).abs() < 1e-15);
        assert!((Seed::circular().zero_distance(c(0.8, 0.0)) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn kind_round_trips_through_text() {
        for k in [SeedKind::Polylog, SeedKind::Circular, SeedKind::Elliptic] {
            assert_eq!(k.to_string().parse::<SeedKind>().unwrap(), k);
        }
        assert!("hyperbolic".parse::<SeedKind>().is_err());
    }
}
