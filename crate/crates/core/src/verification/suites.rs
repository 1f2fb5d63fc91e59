use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use super::SuiteConfig;
use super::{slope_fit, Check};
use crate::circular::{
    boundary_constants, circular_master, cl_component, clausen_cl2, polylog_fourier, sl_component,
    zeta,
};
use crate::error::Result;
use crate::generating::GeneratingSlice;
use crate::hierarchy::{build_tower, reconcile_polylog_tower, Interval, Seed, SeedKind, Tower};
use crate::path::PathSpec;
use crate::phase::{
    nodal_jump, phase_derivative, sl_order2, sl_seed, unwrap_phase, winding_increment,
    winding_number,
};
use crate::theta::{
    degeneration_error, theta1_prime_zero, theta1_prime_zero_series, theta1_product, theta1_series,
    TauParameter, ThetaSettings,
};

const TOL: f64 = 1e-14;
const I: Complex64 = Complex64::new(0.0, 1.0);

fn rng(config: &SuiteConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(config.rng_seed);
    r.set_stream(stream);
    r
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// `count` interior points of `[lo, hi]`, endpoints excluded.
fn interior(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count + 1) as f64;
    (1..=count).map(|i| lo + step * i as f64).collect()
}

fn unit_domain() -> Interval {
    Interval::new(0.0, 0.99).expect("valid interval")
}

fn polylog_domain() -> Interval {
    Interval::new(0.0, TAU - 0.01).expect("valid interval")
}

pub(super) fn theta_cross(config: &SuiteConfig) -> Result<Vec<Check>> {
    let s = ThetaSettings::default();
    let mut r = rng(config, 1);
    let mut worst_value: f64 = 0.0;
    let mut worst_prime: f64 = 0.0;
    for _ in 0..config.theta_samples {
        let tau = TauParameter::from_parts(r.gen_range(-0.5..0.5), r.gen_range(0.5..3.0))?;
        let z = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5));
        worst_value = worst_value.max(relative(
            theta1_series(z, &tau, &s)?,
            theta1_product(z, &tau, &s)?,
        ));
        worst_prime = worst_prime.max(relative(
            theta1_prime_zero_series(&tau, &s)?,
            theta1_prime_zero(&tau, &s)?,
        ));
    }

    let mut r = rng(config, 2);
    let mut worst_shift_one: f64 = 0.0;
    let mut worst_shift_tau: f64 = 0.0;
    for _ in 0..config.quasi_samples {
        let tau = TauParameter::from_parts(r.gen_range(-0.5..0.5), r.gen_range(0.5..3.0))?;
        let t = tau.tau();
        let z = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5));
        let base = theta1_series(z, &tau, &s)?;
        worst_shift_one = worst_shift_one.max(relative(theta1_series(z + 1.0, &tau, &s)?, -base));
        let factor = -(-I * PI * t - 2.0 * PI * I * z).exp();
        worst_shift_tau =
            worst_shift_tau.max(relative(theta1_series(z + t, &tau, &s)?, factor * base));
    }

    Ok(vec![
        Check::at_most("series-vs-product-relative", worst_value, 1e-12),
        Check::at_most("prime-zero-series-vs-product-relative", worst_prime, 1e-12),
        Check::at_most("quasi-period-one-relative", worst_shift_one, 1e-10),
        Check::at_most("quasi-period-tau-relative", worst_shift_tau, 1e-10),
    ])
}

fn backbone_sweep(tower: &Tower, orders: u32, grid: &[f64], h: f64) -> Result<(f64, f64, f64)> {
    let (mut full, mut cl, mut sl) = (0.0f64, 0.0f64, 0.0f64);
    for &x in grid {
        for n in 1..=orders {
            let fd = (tower.eval(n + 1, x + h)? - tower.eval(n + 1, x - h)?) / (2.0 * h);
            let f = tower.eval(n, x)?;
            full = full.max((fd - f).norm());
            let fd_a = (tower.cl(n + 1, x + h)? - tower.cl(n + 1, x - h)?) / (2.0 * h);
            let fd_b = (tower.sl(n + 1, x + h)? - tower.sl(n + 1, x - h)?) / (2.0 * h);
            cl = cl.max((fd_a - tower.cl(n, x)?).abs());
            sl = sl.max((fd_b - tower.sl(n, x)?).abs());
        }
    }
    Ok((full, cl, sl))
}

pub(super) fn backbone(config: &SuiteConfig) -> Result<Vec<Check>> {
    let h = config.fd_step;
    let mut checks = Vec::new();
    let seeds = [
        ("polylog", Seed::polylog()),
        ("circular", Seed::circular()),
        (
            "elliptic-i",
            Seed::elliptic(TauParameter::from_parts(0.0, 1.0)?),
        ),
        (
            "elliptic-0.3+1.5i",
            Seed::elliptic(TauParameter::from_parts(0.3, 1.5)?),
        ),
    ];
    for (label, seed) in seeds {
        let (domain, grid) = if seed.kind() == SeedKind::Polylog {
            (polylog_domain(), interior(0.3, 6.0, config.grid_points))
        } else {
            (unit_domain(), interior(0.1, 0.9, config.grid_points))
        };
        let tower = build_tower(seed, 5, domain, config.resolution)?;
        let (full, cl, sl) = backbone_sweep(&tower, 4, &grid, h)?;
        checks.push(Check::at_most(format!("{label}-fd-backbone"), full, 1e-6));
        checks.push(Check::at_most(format!("{label}-fd-backbone-cl"), cl, 1e-6));
        checks.push(Check::at_most(format!("{label}-fd-backbone-sl"), sl, 1e-6));
    }

    // closed-form circular master on θ ∈ (0.2, 2π - 0.2)
    let mut worst: f64 = 0.0;
    let mut worst_cl: f64 = 0.0;
    let mut worst_sl: f64 = 0.0;
    for &theta in &interior(0.2, TAU - 0.2, config.grid_points) {
        for n in 1..=5 {
            let fd = (circular_master(n + 1, theta + h, TOL)?
                - circular_master(n + 1, theta - h, TOL)?)
                / (2.0 * h);
            worst = worst.max((fd - circular_master(n, theta, TOL)?).norm());
            let fd_a = (cl_component(n + 1, theta + h, TOL)?
                - cl_component(n + 1, theta - h, TOL)?)
                / (2.0 * h);
            let fd_b = (sl_component(n + 1, theta + h, TOL)?
                - sl_component(n + 1, theta - h, TOL)?)
                / (2.0 * h);
            worst_cl = worst_cl.max((fd_a - cl_component(n, theta, TOL)?).abs());
            worst_sl = worst_sl.max((fd_b - sl_component(n, theta, TOL)?).abs());
        }
    }
    checks.push(Check::at_most("circular-master-fd-backbone", worst, 1e-6));
    checks.push(Check::at_most(
        "circular-master-fd-backbone-cl",
        worst_cl,
        1e-6,
    ));
    checks.push(Check::at_most(
        "circular-master-fd-backbone-sl",
        worst_sl,
        1e-6,
    ));

    // F_2 - (z log z - z) = O(z³) for the normalized elliptic seed
    for (label, tau) in [
        ("i", TauParameter::from_parts(0.0, 1.0)?),
        ("0.3+1.5i", TauParameter::from_parts(0.3, 1.5)?),
    ] {
        let tower = build_tower(Seed::elliptic(tau), 2, unit_domain(), config.resolution)?;
        let pts = (0..=8)
            .map(|i| {
                let z = 10f64.powf(-3.0 + 0.25 * i as f64);
                let d = tower.eval(2, z)? - (z * z.ln() - z);
                Ok((z.ln(), d.norm().ln()))
            })
            .collect::<Result<Vec<_>>>()?;
        let fit = slope_fit(&pts)?;
        checks.push(Check::at_least(
            format!("elliptic-{label}-second-order-local-slope"),
            fit.slope,
            2.9,
        ));
    }
    Ok(checks)
}

pub(super) fn degeneration(_config: &SuiteConfig) -> Result<Vec<Check>> {
    let s = ThetaSettings::default();
    let grid: Vec<f64> = (0..=80).map(|i| 0.1 + 0.01 * i as f64).collect();
    let at4 = degeneration_error(&grid, &TauParameter::from_parts(0.0, 4.0)?, &s)?;
    let pts = [2.0, 2.5, 3.0, 3.5]
        .iter()
        .map(|&im| {
            let tau = TauParameter::from_parts(0.0, im)?;
            Ok((tau.q_abs().ln(), degeneration_error(&grid, &tau, &s)?.ln()))
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = slope_fit(&pts)?;

    // towers degenerate too: elliptic at Im τ = 4 against the circular tower
    // shifted to the seed sin(πx)/π
    let ell = build_tower(
        Seed::elliptic(TauParameter::from_parts(0.0, 4.0)?),
        4,
        unit_domain(),
        16,
    )?;
    let circ = build_tower(Seed::circular(), 4, unit_domain(), 16)?;
    let shift = TAU.ln();
    let mut worst: f64 = 0.0;
    for &x in &interior(0.0, 0.99, 60) {
        let mut fact = 1.0;
        for n in 1..=4u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            let want = circ.eval(n, x)? - shift * x.powi(n as i32 - 1) / fact;
            worst = worst.max((ell.eval(n, x)? - want).norm());
        }
    }
    Ok(vec![
        Check::at_most("sup-error-im-tau-4", at4, 1e-9),
        Check::at_most(
            "log-log-slope-deviation-from-2",
            (fit.slope - 2.0).abs(),
            0.1,
        ),
        Check::at_most("tower-degeneration-sup-error", worst, 1e-8),
    ])
}

pub(super) fn boundary(_config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let z2 = PI * PI / 6.0;
    let z3 = zeta(3, TOL)?;
    let expected = [
        (2, -2.0 * z2, 0.0),
        (3, 0.0, -2.0 * z3),
        (4, PI.powi(4) / 45.0, 0.0),
    ];
    for (n, c, s) in expected {
        let b = boundary_constants(n, TOL)?;
        checks.push(Check::at_most(
            format!("boundary-constants-{n}"),
            (b.c - c).abs().max((b.s - s).abs()),
            1e-12,
        ));
        let at_base =
            (cl_component(n, 0.0, TOL)? - b.c).abs() + (sl_component(n, 0.0, TOL)? - b.s).abs();
        checks.push(Check::at_most(
            format!("components-at-base-point-{n}"),
            at_base,
            1e-12,
        ));
    }
    let zeta_vs_series = (2..=6)
        .map(|n| Ok((zeta(n, TOL)? - series_zeta(n)).abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        "zeta-vs-partial-sums",
        zeta_vs_series,
        1e-11,
    ));

    let tower = build_tower(Seed::polylog(), 4, polylog_domain(), 16)?;
    let grid: Vec<f64> = (0..=29).map(|i| 0.2 + 0.2 * i as f64).collect();
    for n in 2..=4 {
        let d = reconcile_polylog_tower(&tower, n, &grid, None)?;
        checks.push(Check::at_most(format!("reconcile-order-{n}"), d, 1e-9));
    }
    let broken = reconcile_polylog_tower(&tower, 2, &grid, Some(2))?;
    checks.push(Check::at_most(
        "omitted-c2-control-deviation-from-zeta2",
        (broken - z2).abs(),
        1e-3,
    ));
    Ok(checks)
}

/// Σ_{k≤K} k^{-n} plus the midpoint integral tail, an oracle independent of
/// the Euler–Maclaurin table.
fn series_zeta(n: u32) -> f64 {
    let k_max = 100_000u64;
    let head: f64 = (1..=k_max)
        .rev()
        .map(|k| (k as f64).powi(-(n as i32)))
        .sum();
    head + (k_max as f64 + 0.5).powf(1.0 - n as f64) / (n as f64 - 1.0)
}

pub(super) fn phase(_config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let tau = TauParameter::from_parts(0.3, 1.5)?;

    let profile = unwrap_phase(&tau, &PathSpec::real_segment(0.1, 0.9)?)?;
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for &x in &interior(0.1, 0.9, 40) {
        let s = (x - 0.1) / 0.8;
        let ds = h / 0.8;
        let fd = (profile.arg_at(s + ds, Complex64::new(x + h, 0.0))?
            - profile.arg_at(s - ds, Complex64::new(x - h, 0.0))?)
            / (2.0 * h);
        worst = worst.max((fd - phase_derivative(&tau, x)?).abs());
    }
    checks.push(Check::at_most(
        "arg-derivative-vs-log-derivative",
        worst,
        1e-6,
    ));

    let tau_i = TauParameter::from_parts(0.0, 1.0)?;
    let tau_12 = TauParameter::from_parts(0.0, 1.2)?;
    let around_zero = winding_increment(&tau_i, Complex64::new(0.0, 0.0), 0.2)?;
    let around_tau = winding_increment(&tau_12, tau_12.tau(), 0.2)?;
    checks.push(Check::at_most(
        "winding-increment-origin",
        (around_zero - TAU).abs(),
        1e-8,
    ));
    checks.push(Check::at_most(
        "winding-increment-tau",
        (around_tau - TAU).abs(),
        1e-8,
    ));
    let count_zero = winding_number(&tau_i, Complex64::new(0.0, 0.0), 0.2)?;
    let count_tau = winding_number(&tau_12, tau_12.tau(), 0.2)?;
    let count_none = winding_number(&tau_i, Complex64::new(0.5, 0.0), 0.1)?;
    checks.push(Check::at_most(
        "winding-number-mismatch",
        ((count_zero - 1).abs() + (count_tau - 1).abs() + count_none.abs()) as f64,
        0.0,
    ));

    let jump = nodal_jump(&tau_i, 0.9, 1.1, 1e-3)?;
    checks.push(Check::at_most(
        "nodal-jump-deviation-from-pi",
        (jump.abs() - PI).abs(),
        0.05,
    ));

    let tower = build_tower(Seed::elliptic(tau), 2, unit_domain(), 16)?;
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.25, 0.4, 0.6, 0.8, 0.95] {
        let direct = sl_order2(&tau, x, 1e-12)?;
        worst = worst.max((direct + 2.0 * tower.eval(2, x)?.im).abs());
    }
    checks.push(Check::at_most("sl-order2-quadrature-vs-tower", worst, 1e-8));

    let grid: Vec<f64> = (0..=80).map(|i| 0.1 + 0.01 * i as f64).collect();
    let pts = [1.5, 2.0, 2.5, 3.0]
        .iter()
        .map(|&im| {
            let tau = TauParameter::from_parts(0.3, im)?;
            let mut sup: f64 = 0.0;
            for &x in &grid {
                sup = sup.max(sl_seed(&tau, x)?.abs());
            }
            Ok((tau.q_abs().ln(), sup.ln()))
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = slope_fit(&pts)?;
    checks.push(Check::at_most(
        "sl-collapse-slope-deviation-from-2",
        (fit.slope - 2.0).abs(),
        0.15,
    ));
    Ok(checks)
}

pub(super) fn generating(config: &SuiteConfig) -> Result<Vec<Check>> {
    let h = config.fd_step;
    let mut checks = Vec::new();
    let seeds = [
        ("polylog", Seed::polylog()),
        ("circular", Seed::circular()),
        (
            "elliptic",
            Seed::elliptic(TauParameter::from_parts(0.3, 1.5)?),
        ),
    ];
    let lambdas = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.4),
    ];
    for (label, seed) in seeds {
        let (domain, grid) = if seed.kind() == SeedKind::Polylog {
            (polylog_domain(), interior(0.5, 5.5, 20))
        } else {
            (unit_domain(), interior(0.2, 0.8, 20))
        };
        let tower = build_tower(seed, 5, domain, config.resolution)?;
        let mut worst: f64 = 0.0;
        let mut worst_proj: f64 = 0.0;
        for n in 1..=5 {
            for &lambda in &lambdas {
                let slice = GeneratingSlice::new(&tower, n, lambda)?;
                for &w in &grid {
                    worst = worst.max(slice.residual(w, h)?.norm());
                    if lambda.im == 0.0 {
                        let p = slice.projection_residuals(w, h)?;
                        worst_proj = worst_proj.max(p.cl.abs().max(p.sl.abs()));
                    }
                }
            }
        }
        checks.push(Check::at_most(
            format!("{label}-truncation-identity"),
            worst,
            1e-6,
        ));
        checks.push(Check::at_most(
            format!("{label}-projection-identities"),
            worst_proj,
            1e-6,
        ));
    }

    // the bare ODE leaves F_1′ - λ^N F_N behind
    let tower = build_tower(Seed::circular(), 5, unit_domain(), config.resolution)?;
    let slice = GeneratingSlice::new(&tower, 4, Complex64::new(0.5, 0.0))?;
    let bare = slice.uncorrected_residual(0.3, h)?.norm();
    checks.push(Check::at_least("uncorrected-residual-control", bare, 0.1));
    Ok(checks)
}

pub(super) fn clausen_values(config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let catalan = clausen_cl2(PI / 2.0, 1e-15)?;
    checks.push(Check::at_most(
        "catalan-reference",
        (catalan - 0.915_965_594_177_219_015).abs(),
        1e-10,
    ));
    checks.push(Check::at_most(
        "sl2-at-half-pi-vs-twice-catalan",
        (sl_component(2, PI / 2.0, TOL)? - 2.0 * catalan).abs(),
        1e-8,
    ));
    checks.push(Check::at_most(
        "cl2-at-zero-and-pi",
        clausen_cl2(0.0, TOL)?.abs() + clausen_cl2(PI, TOL)?.abs(),
        0.0,
    ));
    checks.push(Check::at_most(
        "cl-order2-at-zero",
        (cl_component(2, 0.0, TOL)? + PI * PI / 3.0).abs(),
        1e-10,
    ));

    let thetas = interior(0.0, TAU, config.grid_points.max(60));
    let mut worst_a: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    for &theta in &thetas {
        worst_a = worst_a.max((cl_component(1, theta, TOL)? - (PI - theta)).abs());
        worst_b = worst_b
            .max((sl_component(1, theta, TOL)? + 2.0 * (2.0 * (theta / 2.0).sin()).ln()).abs());
    }
    checks.push(Check::at_most("cl-order1-sawtooth", worst_a, 1e-10));
    checks.push(Check::at_most("sl-order1-log-sine", worst_b, 1e-10));
    let b_third = sl_component(1, TAU / 3.0, TOL)?;
    checks.push(Check::at_most(
        "sl-order1-at-two-thirds-pi",
        (b_third + 3f64.ln()).abs(),
        1e-12,
    ));

    // expansion route against the Fourier route
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for &theta in &[0.3, 1.1, 2.0, 3.0, 4.4, 5.9] {
            let a = crate::circular::polylog_unit_circle(n, theta, TOL)?;
            let b = polylog_fourier(n, theta, 1e-13)?;
            worst = worst.max((a - b).norm());
        }
    }
    checks.push(Check::at_most("polylog-expansion-vs-fourier", worst, 1e-11));

    let tower = build_tower(Seed::circular(), 2, unit_domain(), config.resolution)?;
    let mut worst: f64 = 0.0;
    for i in 0..=90 {
        let x = 0.05 + 0.01 * i as f64;
        let want = -clausen_cl2(TAU * x, 1e-14)? / TAU;
        worst = worst.max((tower.eval(2, x)? - want).norm());
    }
    checks.push(Check::at_most("circular-level2-vs-clausen", worst, 1e-8));
    Ok(checks)
}
