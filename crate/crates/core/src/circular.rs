//! The circular regime: `Li_n(e^{iθ})`, the master `F_n(θ) = i^{-n} Li_n(e^{iθ})`,
//! its CL/SL components `A = 2 Re F_n`, `B = -2 Im F_n`, and boundary
//! constants `C_n = A(n; 0)`, `S_n = B(n; 0)`.
//!
//! Two independent routes are kept:
//!
//! * [`polylog_unit_circle`] uses the small-angle expansion around `θ = 0`
//!   (zeta values plus the `log(-iθ)` term), which converges geometrically on
//!   `|θ| ≤ π` after reduction mod 2π.
//! * [`polylog_fourier`] sums `Σ e^{ikθ}/k^n` directly with a summation-by-parts
//!   tail correction; [`clausen_cl2`] is its imaginary part at `n = 2`.
//!
//! Zeta values come from partial sums plus an Euler–Maclaurin tail in both.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Exclusion radius around `θ ∈ 2πℤ` for the order-one log singularity.
pub const THETA_GUARD: f64 = 1e-8;

const ZETA_TABLE_LEN: usize = 160;
const EM_CUTOFF: u32 = 64;
const MAX_FOURIER_TERMS: f64 = 1e8;

/// B_2, B_4, …, B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `C_n` and `S_n` for one order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConstants {
    pub order: u32,
    pub c: f64,
    pub s: f64,
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `i^{-n}`.
pub fn i_pow_neg(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `H_m = Σ_{k≤m} 1/k`, with `H_0 = 0`.
pub fn harmonic_number(m: u32) -> f64 {
    (1..=m).map(|k| 1.0 / k as f64).sum()
}

/// θ reduced to `(-π, π]`.
fn reduce_angle(theta: f64) -> f64 {
    let mut r = theta - TAU * (theta / TAU).round();
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

/// `Σ_{k≥1} k^{-s}` for integer `s ≥ 2`: 63 terms plus the Euler–Maclaurin tail.
///
/// Returns the value and the magnitude of the first omitted correction.
fn zeta_em(s: u32) -> (f64, f64) {
    let sf = s as f64;
    let k = EM_CUTOFF as f64;
    let mut acc = Compensated::default();
    for j in (1..EM_CUTOFF).rev() {
        acc.add((j as f64).powf(-sf));
    }
    acc.add(k.powf(1.0 - sf) / (sf - 1.0));
    acc.add(0.5 * k.powf(-sf));
    // B_{2p}/(2p)! · s(s+1)…(s+2p-2) · K^{-s-2p+1}
    let mut rising = sf;
    let mut fact = 2.0;
    let mut last = 0.0;
    for (p, b) in BERNOULLI_EVEN.iter().enumerate() {
        let p = p + 1;
        if p > 1 {
            rising *= (sf + 2.0 * p as f64 - 3.0) * (sf + 2.0 * p as f64 - 2.0);
            fact *= (2 * p - 1) as f64 * (2 * p) as f64;
        }
        last = b / fact * rising * k.powf(-sf - 2.0 * p as f64 + 1.0);
        if p < BERNOULLI_EVEN.len() {
            acc.add(last);
        }
    }
    (acc.value(), last.abs())
}

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..ZETA_TABLE_LEN as u32)
            .map(|s| match s {
                0 => -0.5,
                1 => f64::INFINITY,
                _ => zeta_em(s).0,
            })
            .collect()
    })
}

/// ζ(s) for integer `s ≥ 2`; errors if the Euler–Maclaurin remainder exceeds `tol`.
pub fn zeta(s: u32, tol: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::domain(format!("zeta({s}) is outside s >= 2")));
    }
    let (value, remainder) = if (s as usize) < ZETA_TABLE_LEN {
        (zeta_table()[s as usize], zeta_em(s).1)
    } else {
        zeta_em(s)
    };
    if remainder > tol {
        return Err(Error::Truncation {
            terms: EM_CUTOFF as usize,
        });
    }
    Ok(value)
}

fn check_order(n: u32, theta: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("polylog order must be at least 1"));
    }
    if !theta.is_finite() {
        return Err(Error::domain("theta must be finite"));
    }
    if n == 1 && reduce_angle(theta).abs() < THETA_GUARD {
        return Err(Error::domain(format!(
            "Li_1(e^(i theta)) is singular at theta = {theta} (guard {THETA_GUARD:e})"
        )));
    }
    Ok(())
}

/// `-log(1 - e^{iθ})` on the principal branch, θ already reduced and nonzero.
fn li1(phi: f64) -> Complex64 {
    // 1 - e^{iφ} = 2 sin(φ/2) · (-i e^{iφ/2}), argument φ/2 - sgn(φ)π/2
    let modulus = (2.0 * (0.5 * phi).sin()).abs();
    Complex64::new(-modulus.ln(), -(0.5 * phi - phi.signum() * 0.5 * PI))
}

/// `Li_n(e^{iθ})` on the unit circle.
///
/// `n = 1` uses the closed form; `n ≥ 2` the zeta expansion
/// `Σ_{k≠n-1} ζ(n-k) μ^k/k! + μ^{n-1}/(n-1)! (H_{n-1} - log(-μ))`, `μ = iθ`,
/// truncated once the geometric tail bound drops below `tol`.
pub fn polylog_unit_circle(n: u32, theta: f64, tol: f64) -> Result<Complex64> {
    check_order(n, theta)?;
    let phi = reduce_angle(theta);
    if n == 1 {
        return Ok(li1(phi));
    }
    if phi == 0.0 {
        return Ok(Complex64::new(zeta(n, tol)?, 0.0));
    }
    let mu = Complex64::new(0.0, phi);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0); // μ^k / k!
    for k in 0..n - 1 {
        sum += power * zeta(n - k, tol)?;
        power = power * mu / (k + 1) as f64;
    }
    // power = μ^{n-1}/(n-1)!
    let log_neg_mu = Complex64::new(phi.abs().ln(), -0.5 * PI * phi.signum());
    sum += power * (harmonic_number(n - 1) - log_neg_mu);
    let mu_n1 = power; // reused below as μ^{n-1}/(n-1)!
    sum += mu_n1 * mu / n as f64 * -0.5;

    // Σ_j 2 ζ(2j) (φ/2π)^{2j} μ^{n-1} / (2j (2j+1) … (2j+n-1))
    let x2 = (phi / TAU).powi(2);
    let mu_pow: Complex64 = (0..n - 1).fold(Complex64::new(1.0, 0.0), |acc, _| acc * mu);
    let mut xj = 1.0;
    for j in 1..400u32 {
        xj *= x2;
        let denom: f64 = (0..n).map(|i| (2 * j + i) as f64).product();
        let zeta2j = if (2 * j as usize) < ZETA_TABLE_LEN {
            zeta_table()[2 * j as usize]
        } else {
            1.0
        };
        let term = mu_pow * (2.0 * zeta2j * xj / denom);
        sum += term;
        // later terms shrink at least by x2 each
        let tail = term.norm() * x2 / (1.0 - x2);
        if tail <= tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: 400 })
}

/// `Σ_{k≥1} e^{ikθ}/k^n` by direct summation with a first-order
/// summation-by-parts tail correction. At `θ ∈ 2πℤ` this is ζ(n).
pub fn polylog_fourier(n: u32, theta: f64, tol: f64) -> Result<Complex64> {
    check_order(n, theta)?;
    let phi = reduce_angle(theta);
    if n == 1 {
        return Ok(li1(phi));
    }
    if phi == 0.0 {
        return Ok(Complex64::new(zeta(n, tol)?, 0.0));
    }
    let nf = n as f64;
    let r = Complex64::from_polar(1.0, phi);
    let one_minus_r = 1.0 - r;
    let gap2 = one_minus_r.norm_sqr();
    // remainder after the correction ≤ 2n / ((K+1)^{n+1} |1-r|²)
    let k_needed = (2.0 * nf / (tol * gap2)).powf(1.0 / (nf + 1.0)).ceil();
    if k_needed > MAX_FOURIER_TERMS {
        return Err(Error::Truncation {
            terms: MAX_FOURIER_TERMS as usize,
        });
    }
    let k_max = k_needed.max(8.0) as u64;
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for k in (1..=k_max).rev() {
        let kf = k as f64;
        let w = kf.powf(-nf);
        let (s, c) = (kf * phi).sin_cos();
        re.add(c * w);
        im.add(s * w);
    }
    let next = (k_max + 1) as f64;
    let correction = Complex64::from_polar(next.powf(-nf), next * phi) / one_minus_r;
    Ok(Complex64::new(re.value(), im.value()) + correction)
}

/// `F_n(θ) = i^{-n} Li_n(e^{iθ})`.
pub fn circular_master(n: u32, theta: f64, tol: f64) -> Result<Complex64> {
    Ok(i_pow_neg(n) * polylog_unit_circle(n, theta, tol)?)
}

/// `A(n; θ) = 2 Re F_n(θ)`.
pub fn cl_component(n: u32, theta: f64, tol: f64) -> Result<f64> {
    Ok(2.0 * circular_master(n, theta, tol)?.re)
}

/// `B(n; θ) = -2 Im F_n(θ)`.
pub fn sl_component(n: u32, theta: f64, tol: f64) -> Result<f64> {
    Ok(-2.0 * circular_master(n, theta, tol)?.im)
}

/// `Cl₂(θ) = Σ sin(kθ)/k²` from the direct series.
pub fn clausen_cl2(theta: f64, tol: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::domain("theta must be finite"));
    }
    let phi = reduce_angle(theta);
    if phi == 0.0 || phi == PI {
        return Ok(0.0);
    }
    Ok(polylog_fourier(2, phi, tol)?.im)
}

/// `C_n = 2 Re(i^{-n} ζ(n))`, `S_n = -2 Im(i^{-n} ζ(n))`.
pub fn boundary_constants(n: u32, tol: f64) -> Result<BoundaryConstants> {
    if n < 2 {
        return Err(Error::domain("boundary constants need n >= 2"));
    }
    let v = i_pow_neg(n) * zeta(n, tol)?;
    Ok(BoundaryConstants {
        order: n,
        c: 2.0 * v.re,
        s: -2.0 * v.im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-14;
    const CATALAN: f64 = 0.915_965_594_177_219_015;
    const ZETA3: f64 = 1.202_056_903_159_594_285;

    /// Plain partial sums of Σ k^{-s} plus the integral tail bound midpoint.
    fn zeta_partial(s: u32, k_max: u64) -> f64 {
        let head: f64 = (1..=k_max)
            .rev()
            .map(|k| (k as f64).powi(-(s as i32)))
            .sum();
        // ∫_{K+1/2}^∞ t^{-s} dt approximates the tail to O(K^{-s-2})
        head + (k_max as f64 + 0.5).powf(1.0 - s as f64) / (s as f64 - 1.0)
    }

    #[test]
    fn zeta_against_partial_sums() {
        for s in 2..8 {
            let oracle = zeta_partial(s, 200_000);
            assert!((zeta(s, TOL).unwrap() - oracle).abs() < 1e-12, "s={s}");
        }
        assert!((zeta(2, TOL).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4, TOL).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3, TOL).unwrap() - ZETA3).abs() < 1e-15);
        assert!(zeta(1, TOL).is_err());
    }

    #[test]
    fn zeta_values_at_origin() {
        let z2 = polylog_unit_circle(2, 0.0, 1e-12).unwrap();
        assert!((z2.re - 1.644_934_066_8).abs() < 1e-10);
        let z3 = polylog_unit_circle(3, 0.0, 1e-12).unwrap();
        assert!((z3.re - 1.202_056_903_2).abs() < 1e-10);
        assert!((polylog_unit_circle(2, TAU, 1e-12).unwrap() - z2).norm() < 1e-15);
    }

    #[test]
    fn li1_closed_form() {
        let v = polylog_unit_circle(1, PI, TOL).unwrap();
        assert!((v.re + 2f64.ln()).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!(polylog_unit_circle(1, 0.0, TOL).is_err());
        assert!(polylog_unit_circle(1, TAU + 1e-9, TOL).is_err());
        assert!(polylog_unit_circle(0, 1.0, TOL).is_err());
    }

    // Arbitrary-precision reference values of Li_n(e^{iθ}).
    #[test]
    fn matches_external_reference_values() {
        let cases = [
            (2, 0.7, 0.667876638091798857, 0.954448086482735016),
            (2, 2.0, -0.496658586741566802, 0.727146050863279247),
            (2, 5.5, 0.568054269476295031, -0.981277474774473679),
            (3, 0.7, 0.746336493954494279, 0.795192080062342137),
            (3, 5.5, 0.665762799064060288, -0.846573741774232632),
            (4, 2.0, -0.446483130925452522, 0.861425916934444357),
            (5, 5.5, 0.704786432930831940, -0.739354827077890190),
        ];
        for (n, th, re, im) in cases {
            let v = polylog_unit_circle(n, th, TOL).unwrap();
            assert!(
                (v - Complex64::new(re, im)).norm() < 1e-14,
                "n={n} θ={th} {v}"
            );
            let f = polylog_fourier(n, th, 1e-13).unwrap();
            assert!(
                (f - Complex64::new(re, im)).norm() < 1e-12,
                "n={n} θ={th} {f}"
            );
        }
    }

    #[test]
    fn expansion_and_fourier_routes_agree() {
        for n in 2..6 {
            for i in 1..40 {
                let th = 0.16 * i as f64;
                let a = polylog_unit_circle(n, th, TOL).unwrap();
                let b = polylog_fourier(n, th, 1e-13).unwrap();
                assert!((a - b).norm() < 1e-12, "n={n} θ={th}");
            }
        }
    }

    #[test]
    fn master_values() {
        let v = circular_master(1, PI, TOL).unwrap();
        assert!((v - Complex64::new(0.0, 2f64.ln())).norm() < 1e-15);
        let v = circular_master(2, 0.0, TOL).unwrap();
        assert!((v.re + PI * PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn master_backbone_by_finite_differences() {
        let h = 1e-4;
        for n in 1..=5 {
            for i in 0..20 {
                let th = 0.2 + i as f64 * (TAU - 0.4) / 19.0;
                let fd = (circular_master(n + 1, th + h, TOL).unwrap()
                    - circular_master(n + 1, th - h, TOL).unwrap())
                    / (2.0 * h);
                let f = circular_master(n, th, TOL).unwrap();
                assert!((fd - f).norm() <= 1e-6, "n={n} θ={th}");
            }
        }
    }

    #[test]
    fn order_one_components() {
        for i in 1..60 {
            let th = i as f64 * TAU / 60.0;
            let a = cl_component(1, th, TOL).unwrap();
            let b = sl_component(1, th, TOL).unwrap();
            assert!((a - (PI - th)).abs() <= 1e-10, "θ={th}");
            assert!((b + 2.0 * (2.0 * (th / 2.0).sin()).ln()).abs() <= 1e-10);
        }
        let b = sl_component(1, TAU / 3.0, TOL).unwrap();
        assert!((b + 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn sawtooth_partial_sums() {
        // A(1; θ) = 2 Σ sin(kθ)/k is the sawtooth π - θ
        let th = 1.3;
        let partial: f64 = (1..=200_000)
            .map(|k| (k as f64 * th).sin() / k as f64)
            .sum();
        let a = cl_component(1, th, TOL).unwrap();
        assert!((2.0 * partial - a).abs() < 1e-4);
        assert!((a - (PI - th)).abs() < 1e-14);
    }

    #[test]
    fn order_two_components() {
        let a = cl_component(2, 0.0, TOL).unwrap();
        assert!((a + PI * PI / 3.0).abs() < 1e-12);
        let b = sl_component(2, PI / 2.0, TOL).unwrap();
        assert!((b - 2.0 * CATALAN).abs() < 1e-12);
    }

    #[test]
    fn clausen_values() {
        assert_eq!(clausen_cl2(0.0, 1e-12).unwrap(), 0.0);
        assert_eq!(clausen_cl2(PI, 1e-12).unwrap(), 0.0);
        assert!((clausen_cl2(PI / 2.0, 1e-12).unwrap() - CATALAN).abs() < 1e-12);
        assert!((clausen_cl2(1.0, 1e-12).unwrap() - 1.013_959_132_360_768_504).abs() < 1e-12);
        let x = TAU * 0.05;
        assert!((clausen_cl2(x, 1e-12).unwrap() - 0.678_341_062_111_097_045).abs() < 1e-12);
    }

    #[test]
    fn boundary_constants_by_order() {
        let b2 = boundary_constants(2, TOL).unwrap();
        assert!((b2.c + PI * PI / 3.0).abs() < 1e-14 && b2.s == 0.0);
        let b3 = boundary_constants(3, TOL).unwrap();
        assert!(b3.c == 0.0 && (b3.s + 2.0 * ZETA3).abs() < 1e-14);
        let b4 = boundary_constants(4, TOL).unwrap();
        assert!((b4.c - PI.powi(4) / 45.0).abs() < 1e-13 && b4.s == 0.0);
        assert!(boundary_constants(1, TOL).is_err());
        for n in 2..8 {
            let b = boundary_constants(n, TOL).unwrap();
            assert!((b.c - cl_component(n, 0.0, TOL).unwrap()).abs() < 1e-14);
            assert!((b.s - sl_component(n, 0.0, TOL).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_route_reports_truncation_near_origin() {
        assert!(matches!(
            polylog_fourier(2, 1e-9, 1e-12),
            Err(Error::Truncation { .. })
        ));
        // the expansion route has no such limitation
        assert!(polylog_unit_circle(2, 1e-9, 1e-12).is_ok());
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(n in 2u32..7, th in 0.01f64..6.27) {
            let a = polylog_unit_circle(n, TAU - th, TOL).unwrap();
            let b = polylog_unit_circle(n, th, TOL).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-12);
        }

        #[test]
        fn periodic_in_theta(n in 1u32..6, th in 0.01f64..6.27, k in -3i32..3) {
            let a = polylog_unit_circle(n, th + TAU * k as f64, TOL).unwrap();
            let b = polylog_unit_circle(n, th, TOL).unwrap();
            prop_assert!((a - b).norm() <= 1e-11);
        }
    }
}
