use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Interval, Seed, SeedKind, DOMAIN_MARGIN};
use crate::chebyshev::ChebSeries;
use crate::circular::{circular_master, harmonic_number, i_pow_neg, zeta};
use crate::error::{Error, Result};
use crate::path::PathSpec;
use crate::phase::track_arg;
use crate::theta::ZERO_GUARD;

const MAX_NODES: usize = 1 << 13;
const INTERP_TARGET: f64 = 1e-12;
const CHOP_TOL: f64 = 1e-16;
const SERIES_TOL: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `L_n(x) = x^{n-1}/(n-1)! · (ln x - H_{n-1})`, taken as 0 at `x = 0` for `n ≥ 2`.
pub fn singular_part(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("orders start at 1"));
    }
    if x == 0.0 && n >= 2 {
        return Ok(0.0);
    }
    if !(x > 0.0) {
        return Err(Error::domain(format!("L_{n} needs x > 0, got {x}")));
    }
    let mut pow = 1.0;
    for k in 1..n {
        pow *= x / k as f64;
    }
    Ok(pow * (x.ln() - harmonic_number(n - 1)))
}

/// The hierarchy `F_1..F_N` of one seed on a real interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TowerRepr", into = "TowerRepr")]
pub struct Tower {
    seed: Seed,
    domain: Interval,
    /// `R_1..R_N` on `[0, domain.hi]`.
    parts: Vec<ChebSeries>,
    nodes: usize,
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct TowerRepr {
    seed: Seed,
    max_order: u32,
    domain: Interval,
    support: [f64; 2],
    nodes: usize,
    parts: Vec<CoeffRepr>,
}

impl From<Tower> for TowerRepr {
    fn from(t: Tower) -> Self {
        TowerRepr {
            seed: t.seed,
            max_order: t.parts.len() as u32,
            domain: t.domain,
            support: [0.0, t.domain.hi()],
            nodes: t.nodes,
            parts: t
                .parts
                .iter()
                .map(|p| CoeffRepr {
                    re: p.coeffs().iter().map(|c| c.re).collect(),
                    im: p.coeffs().iter().map(|c| c.im).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<TowerRepr> for Tower {
    type Error = Error;
    fn try_from(r: TowerRepr) -> Result<Self> {
        if r.parts.len() != r.max_order as usize || r.max_order < 2 {
            return Err(Error::Config(
                "tower part count does not match max_order".into(),
            ));
        }
        let domain = Interval::new(r.domain.lo(), r.domain.hi())?;
        if r.support != [0.0, domain.hi()] {
            return Err(Error::Config("tower support must be [0, domain.hi]".into()));
        }
        let mut parts = Vec::with_capacity(r.parts.len());
        for p in r.parts {
            if p.re.len() != p.im.len() || p.re.is_empty() {
                return Err(Error::Config("malformed coefficient arrays".into()));
            }
            let coeffs =
                p.re.iter()
                    .zip(&p.im)
                    .map(|(&a, &b)| Complex64::new(a, b))
                    .collect();
            parts.push(ChebSeries::from_coeffs(0.0, domain.hi(), coeffs));
        }
        Ok(Tower {
            seed: r.seed,
            domain,
            parts,
            nodes: r.nodes,
        })
    }
}

impl Tower {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn max_order(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// Number of interpolation intervals used for `R_1`.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Analytic part `R_n`.
    pub fn analytic_part(&self, n: u32) -> Result<&ChebSeries> {
        self.check_order(n)?;
        Ok(&self.parts[n as usize - 1])
    }

    fn check_order(&self, n: u32) -> Result<()> {
        if n == 0 || n > self.max_order() {
            return Err(Error::domain(format!(
                "order {n} outside 1..={}",
                self.max_order()
            )));
        }
        Ok(())
    }

    /// `F_n(x) = L_n(x) + R_n(x)`.
    pub fn eval(&self, n: u32, x: f64) -> Result<Complex64> {
        self.check_order(n)?;
        if !self.domain.contains(x) {
            return Err(Error::domain(format!(
                "x = {x} outside [{}, {}]",
                self.domain.lo(),
                self.domain.hi()
            )));
        }
        if x == 0.0 && n == 1 {
            return Err(Error::domain("F_1 is singular at 0"));
        }
        Ok(singular_part(n, x)? + self.parts[n as usize - 1].eval(x))
    }

    /// `A(n; x) = 2 Re F_n(x)`.
    pub fn cl(&self, n: u32, x: f64) -> Result<f64> {
        Ok(2.0 * self.eval(n, x)?.re)
    }

    /// `B(n; x) = -2 Im F_n(x)`.
    pub fn sl(&self, n: u32, x: f64) -> Result<f64> {
        Ok(-2.0 * self.eval(n, x)?.im)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tower serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}

fn check_domain(seed: &Seed, domain: &Interval) -> Result<()> {
    let limit = seed.first_zero() - DOMAIN_MARGIN;
    if domain.lo() < 0.0 || domain.hi() > limit {
        return Err(Error::domain(format!(
            "domain [{}, {}] must lie in [0, {limit}]",
            domain.lo(),
            domain.hi()
        )));
    }
    Ok(())
}

/// Builds `F_1..F_N` for `seed` on `domain`, starting the interpolation of
/// `R_1` at `resolution` intervals and doubling until it is resolved.
pub fn build_tower(
    seed: Seed,
    max_order: u32,
    domain: Interval,
    resolution: usize,
) -> Result<Tower> {
    if max_order < 2 {
        return Err(Error::domain("a tower needs max_order >= 2"));
    }
    if resolution < 16 {
        return Err(Error::domain("resolution must be at least 16"));
    }
    check_domain(&seed, &domain)?;
    let hi = domain.hi();

    let path = PathSpec::real_segment(0.0, hi)?.with_samples_hint(32)?;
    let track = track_arg(&path, |s| {
        seed.ratio(Complex64::new(path.position(s).re, 0.0))
    })?;
    // put log S on its principal branch at the domain midpoint
    let z_ref = domain.midpoint();
    let principal = seed.ratio(Complex64::new(z_ref, 0.0))?.arg();
    let shift = principal - track.lift(z_ref / hi, principal);

    let r1 = |x: f64| -> Result<Complex64> {
        let r = seed.ratio(Complex64::new(x, 0.0))?;
        Ok(Complex64::new(
            r.norm().ln(),
            track.lift(x / hi, r.arg()) + shift,
        ))
    };

    let mut n = resolution;
    let mut values = ChebSeries::nodes(0.0, hi, n)
        .into_iter()
        .map(&r1)
        .collect::<Result<Vec<_>>>()?;
    let series = loop {
        if 2 * n > MAX_NODES {
            return Err(Error::Resolution {
                nodes: 2 * n,
                target: INTERP_TARGET,
            });
        }
        let coarse = ChebSeries::from_values(0.0, hi, &values);
        let fine_nodes = ChebSeries::nodes(0.0, hi, 2 * n);
        let mut fine = Vec::with_capacity(2 * n + 1);
        let mut err: f64 = 0.0;
        for (j, &x) in fine_nodes.iter().enumerate() {
            if j % 2 == 0 {
                fine.push(values[j / 2]);
            } else {
                let v = r1(x)?;
                err = err.max((coarse.eval(x) - v).norm());
                fine.push(v);
            }
        }
        let scale = fine.iter().map(|v| v.norm()).fold(1.0, f64::max);
        n *= 2;
        values = fine;
        if err <= INTERP_TARGET * scale {
            let mut s = ChebSeries::from_values(0.0, hi, &values);
            s.chop(CHOP_TOL);
            break s;
        }
    };

    let mut parts = Vec::with_capacity(max_order as usize);
    parts.push(series);
    for k in 1..max_order as usize {
        let next = parts[k - 1].integral();
        parts.push(next);
    }
    Ok(Tower {
        seed,
        domain,
        parts,
        nodes: n,
    })
}

/// `log S(z)` on the branch continued along the straight line from the
/// midpoint of `domain`, where it is principal.
pub fn seed_log(seed: &Seed, domain: &Interval, z: Complex64) -> Result<Complex64> {
    let guarded = |w: Complex64| -> Result<Complex64> {
        if seed.zero_distance(w) < ZERO_GUARD {
            return Err(Error::near_zero(w, ZERO_GUARD));
        }
        seed.eval(w)
    };
    let s = guarded(z)?;
    let z_ref = Complex64::new(domain.midpoint(), 0.0);
    if z == z_ref {
        return Ok(s.ln());
    }
    let path = PathSpec::segment(z_ref, z)?;
    let track = track_arg(&path, |t| guarded(path.position(t)))?;
    let arg = track.lift(1.0, s.arg());
    Ok(Complex64::new(s.norm().ln(), arg))
}

/// Largest `|i^{-n} Li_n(e^{iθ}) - (i T_n(θ) + Σ_{k=2}^{n} c_k θ^{n-k}/(n-k)!)|`
/// over `theta_grid` and `2 ≤ n ≤ max_order`, where `T_n` is a polylog-seed
/// tower and `c_k = i^{-k} ζ(k)`.
///
/// `omit` drops one constant `c_k`, which must break the agreement.
pub fn reconcile_polylog_tower(
    tower: &Tower,
    max_order: u32,
    theta_grid: &[f64],
    omit: Option<u32>,
) -> Result<f64> {
    if tower.seed().kind() != SeedKind::Polylog {
        return Err(Error::domain("reconciliation needs a polylog-seed tower"));
    }
    if max_order < 2 || max_order > tower.max_order() {
        return Err(Error::domain(format!(
            "max_order must lie in 2..={}",
            tower.max_order()
        )));
    }
    let constants = (2..=max_order)
        .map(|k| {
            if Some(k) == omit {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Ok(i_pow_neg(k) * zeta(k, SERIES_TOL)?)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    for &theta in theta_grid {
        for n in 2..=max_order {
            let direct = circular_master(n, theta, SERIES_TOL)?;
            let mut rebuilt = I * tower.eval(n, theta)?;
            for k in 2..=n {
                let mut pow = 1.0;
                for j in 1..=(n - k) {
                    pow *= theta / j as f64;
                }
                rebuilt += constants[k as usize - 2] * pow;
            }
            worst = worst.max((direct - rebuilt).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::clausen_cl2;
    use crate::theta::TauParameter;
    use std::f64::consts::{PI, TAU};

    fn tau(re: f64, im: f64) -> TauParameter {
        TauParameter::from_parts(re, im).unwrap()
    }

    fn unit_tower(seed: Seed, n: u32) -> Tower {
        build_tower(seed, n, Interval::new(0.0, 0.99).unwrap(), 16).unwrap()
    }

    #[test]
    fn singular_ladder() {
        assert_eq!(singular_part(3, 0.0).unwrap(), 0.0);
        let z: f64 = 0.37;
        assert!((singular_part(3, z).unwrap() - z * z / 2.0 * (z.ln() - 1.5)).abs() < 1e-16);
        // five-point stencil, truncation error O(h⁴)
        let h = 1e-3;
        let l = |n: u32, x: f64| singular_part(n, x).unwrap();
        for n in 1..6 {
            let fd = (8.0 * (l(n + 1, z + h) - l(n + 1, z - h))
                - (l(n + 1, z + 2.0 * h) - l(n + 1, z - 2.0 * h)))
                / (12.0 * h);
            assert!((fd - singular_part(n, z).unwrap()).abs() < 1e-10);
        }
        assert!(singular_part(1, 0.0).is_err());
    }

    #[test]
    fn circular_level_one_is_log_sine() {
        let t = unit_tower(Seed::circular(), 2);
        for i in 1..20 {
            let x = 0.05 * i as f64;
            let want = (2.0 * (PI * x).sin()).ln();
            let got = t.eval(1, x).unwrap();
            assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn circular_level_two_is_clausen() {
        let t = unit_tower(Seed::circular(), 2);
        for i in 0..=90 {
            let x = 0.05 + 0.01 * i as f64;
            let want = -clausen_cl2(TAU * x, 1e-14).unwrap() / TAU;
            assert!((t.eval(2, x).unwrap().re - want).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn elliptic_levels_match_reference_values() {
        let t = unit_tower(Seed::elliptic(tau(0.3, 1.5)), 3);
        let f2 = t.eval(2, 0.4).unwrap();
        let f3 = t.eval(3, 0.4).unwrap();
        let w2 = Complex64::new(-0.802_819_353_193_569_276, 4.703_595_091_322_059_16e-5);
        let w3 = Complex64::new(-0.196_892_332_423_492_637, 5.245_614_655_494_453_76e-6);
        assert!((f2 - w2).norm() < 1e-12, "{f2}");
        assert!((f3 - w3).norm() < 1e-12, "{f3}");
    }

    #[test]
    fn base_point_values_vanish() {
        let t = unit_tower(Seed::elliptic(tau(0.3, 1.5)), 4);
        for n in 2..=4 {
            assert!(t.eval(n, 0.0).unwrap().norm() < 1e-15);
        }
        assert!(t.eval(1, 0.0).is_err());
        let r1 = t.analytic_part(1).unwrap().eval(0.0);
        assert!(r1.norm() < 1e-14);
    }

    #[test]
    fn backbone_for_every_seed() {
        let towers = [
            build_tower(
                Seed::polylog(),
                5,
                Interval::new(0.0, TAU - 0.01).unwrap(),
                16,
            )
            .unwrap(),
            unit_tower(Seed::circular(), 5),
            unit_tower(Seed::elliptic(tau(0.3, 1.5)), 5),
        ];
        let h = 1e-4;
        for t in &towers {
            let (lo, hi) = if t.seed().kind() == SeedKind::Polylog {
                (0.3, 6.0)
            } else {
                (0.1, 0.9)
            };
            for i in 0..=20 {
                let x = lo + (hi - lo) * i as f64 / 20.0;
                for n in 1..5 {
                    let fd =
                        (t.eval(n + 1, x + h).unwrap() - t.eval(n + 1, x - h).unwrap()) / (2.0 * h);
                    assert!(
                        (fd - t.eval(n, x).unwrap()).norm() <= 1e-6,
                        "{:?} n={n} x={x}",
                        t.seed().kind()
                    );
                }
            }
        }
    }

    #[test]
    fn elliptic_projections() {
        let imaginary = unit_tower(Seed::elliptic(tau(0.0, 1.3)), 2);
        let degenerate = unit_tower(Seed::elliptic(tau(0.0, 4.0)), 2);
        for i in 1..10 {
            let x = 0.1 * i as f64;
            assert!(imaginary.sl(1, x).unwrap().abs() <= 1e-12);
            let want = 2.0 * ((PI * x).sin() / PI).ln();
            assert!((degenerate.cl(1, x).unwrap() - want).abs() <= 1e-8);
        }
    }

    #[test]
    fn elliptic_tower_degenerates_to_shifted_circular() {
        let ell = unit_tower(Seed::elliptic(tau(0.0, 4.0)), 4);
        let circ = unit_tower(Seed::circular(), 4);
        let shift = TAU.ln();
        for i in 1..=98 {
            let x = 0.01 * i as f64;
            let mut fact = 1.0;
            for n in 1..=4u32 {
                if n > 1 {
                    fact *= (n - 1) as f64;
                }
                let want = circ.eval(n, x).unwrap() - shift * x.powi(n as i32 - 1) / fact;
                assert!(
                    (ell.eval(n, x).unwrap() - want).norm() <= 1e-8,
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn second_order_local_expansion() {
        // F_2 - (z log z - z) - z log S'(0) = O(z³)
        for seed in [
            Seed::elliptic(tau(0.0, 1.0)),
            Seed::elliptic(tau(0.3, 1.5)),
            Seed::circular(),
        ] {
            let t = unit_tower(seed, 2);
            let lin = seed.s_prime_0().ln();
            let pts: Vec<(f64, f64)> = (0..=8)
                .map(|i| {
                    let z = 10f64.powf(-3.0 + 0.25 * i as f64);
                    let d = t.eval(2, z).unwrap() - (z * z.ln() - z) - lin * z;
                    (z.ln(), d.norm().ln())
                })
                .collect();
            let slope = (pts[8].1 - pts[0].1) / (pts[8].0 - pts[0].0);
            assert!(slope >= 2.9, "{:?}: {slope}", seed.kind());
        }
    }

    #[test]
    fn seed_log_examples() {
        let d = Interval::new(0.0, 0.99).unwrap();
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!((seed_log(&Seed::circular(), &d, c(0.5)).unwrap() - c(2f64.ln())).norm() < 1e-15);
        let v = seed_log(&Seed::elliptic(tau(0.0, 4.0)), &d, c(0.5)).unwrap();
        assert!((v + c(PI.ln())).norm() < 1e-9);
        let pd = Interval::new(0.0, TAU - 0.01).unwrap();
        for theta in [0.3, 1.0, 2.5, PI] {
            let v = seed_log(&Seed::polylog(), &pd, c(theta)).unwrap();
            assert!((v.re - (2.0 * (theta / 2.0).sin()).ln()).abs() < 1e-14);
        }
        // agrees with log z + R_1 on the tower's branch
        let t = unit_tower(Seed::elliptic(tau(0.3, 1.5)), 2);
        let v = seed_log(&Seed::elliptic(tau(0.3, 1.5)), &d, c(0.2)).unwrap();
        assert!((v - t.eval(1, 0.2).unwrap()).norm() < 1e-12);
        assert!(seed_log(&Seed::circular(), &d, c(1.0)).is_err());
    }

    #[test]
    fn polylog_reconciliation() {
        let t = build_tower(
            Seed::polylog(),
            4,
            Interval::new(0.0, TAU - 0.01).unwrap(),
            16,
        )
        .unwrap();
        let grid: Vec<f64> = (0..=29).map(|i| 0.2 + 0.2 * i as f64).collect();
        for n in 2..=4 {
            assert!(
                reconcile_polylog_tower(&t, n, &grid, None).unwrap() <= 1e-9,
                "n={n}"
            );
        }
        let broken = reconcile_polylog_tower(&t, 2, &grid, Some(2)).unwrap();
        assert!((broken - PI * PI / 6.0).abs() < 1e-3);
        assert!(reconcile_polylog_tower(&unit_tower(Seed::circular(), 2), 2, &grid, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = unit_tower(Seed::elliptic(tau(0.3, 1.5)), 3);
        let back = Tower::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(Tower::from_json("{\"seed\":1}").is_err());
    }

    #[test]
    fn rejects_bad_requests() {
        let d = Interval::new(0.0, 0.99).unwrap();
        assert!(build_tower(Seed::circular(), 1, d, 16).is_err());
        assert!(build_tower(Seed::circular(), 2, d, 8).is_err());
        assert!(build_tower(Seed::circular(), 2, Interval::new(0.0, 0.995).unwrap(), 16).is_err());
        let t = unit_tower(Seed::circular(), 2);
        assert!(t.eval(3, 0.5).is_err());
        assert!(t.eval(2, 0.995).is_err());
    }
}
