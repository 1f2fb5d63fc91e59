//! Branch-continuous argument of θ̃₁ along paths.
//!
//! Samples are refined by bisection until every consecutive increment of the
//! principal argument stays below π/2; the unwrapped argument is anchored at
//! the principal value of the first sample. The same tracker serves the
//! hierarchy for continuing `log S` along integration paths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::hierarchy::DOMAIN_MARGIN;
use crate::path::PathSpec;
use crate::quadrature::tanh_sinh;
use crate::theta::{
    theta1_log_derivative, theta1_normalized, theta1_prime_zero, theta1_series, TauParameter,
    ThetaSettings, ZERO_GUARD,
};

const MAX_DEPTH: u32 = 40;
const CIRCLE_SEGMENTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSample {
    /// Path parameter, segment `i` spanning `[i, i + 1]`.
    pub param: f64,
    pub position: Complex64,
    pub unwrapped_arg: f64,
}

/// Unwrapped argument samples along a path.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ArgTrack {
    pub samples: Vec<PhaseSample>,
    pub max_step: f64,
    pub refined: bool,
}

fn wrap(d: f64) -> f64 {
    let mut r = d - TAU * (d / TAU).round();
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

/// Tracks `arg f(s)` along `path`; `f` maps the path parameter to a value.
pub(crate) fn track_arg<F>(path: &PathSpec, f: F) -> Result<ArgTrack>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let principal = |s: f64| -> Result<f64> {
        let v = f(s)?;
        if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::near_zero(path.position(s), 0.0));
        }
        Ok(v.arg())
    };

    let hint = path.samples_hint().max(1);
    let mut coarse = Vec::with_capacity(path.segments() * hint + 1);
    for i in 0..path.segments() {
        for j in 0..hint {
            coarse.push(i as f64 + j as f64 / hint as f64);
        }
    }
    coarse.push(path.segments() as f64);

    let first = principal(coarse[0])?;
    let mut track = ArgTrack {
        samples: vec![PhaseSample {
            param: coarse[0],
            position: path.position(coarse[0]),
            unwrapped_arg: first,
        }],
        max_step: 0.0,
        refined: false,
    };

    struct Walker<'a, P> {
        principal: P,
        path: &'a PathSpec,
        track: &'a mut ArgTrack,
    }

    impl<P: Fn(f64) -> Result<f64>> Walker<'_, P> {
        fn push(&mut self, s: f64, a: f64, step: f64) {
            let last = self.track.samples.last().expect("anchored").unwrapped_arg;
            self.track.max_step = self.track.max_step.max(step.abs());
            self.track.samples.push(PhaseSample {
                param: s,
                position: self.path.position(s),
                unwrapped_arg: last + step,
            });
            let _ = a;
        }

        fn refine(&mut self, s0: f64, a0: f64, s1: f64, a1: f64, depth: u32) -> Result<()> {
            let sm = 0.5 * (s0 + s1);
            let am = (self.principal)(sm)?;
            let d1 = wrap(am - a0);
            let d2 = wrap(a1 - am);
            let d = wrap(a1 - a0);
            if d1.abs() < FRAC_PI_2 && d2.abs() < FRAC_PI_2 && d.abs() < FRAC_PI_2 {
                self.push(s1, a1, d);
                return Ok(());
            }
            if depth >= MAX_DEPTH {
                return Err(Error::Branch(format!(
                    "argument still jumps by {:.3} after {MAX_DEPTH} bisections near {}",
                    d,
                    self.path.position(sm)
                )));
            }
            self.track.refined = true;
            self.refine(s0, a0, sm, am, depth + 1)?;
            self.refine(sm, am, s1, a1, depth + 1)
        }
    }

    let mut walker = Walker {
        principal: &principal,
        path,
        track: &mut track,
    };
    let mut prev = (coarse[0], first);
    for &s in &coarse[1..] {
        let a = (walker.principal)(s)?;
        walker.refine(prev.0, prev.1, s, a, 0)?;
        prev = (s, a);
    }
    Ok(track)
}

impl ArgTrack {
    /// Continuous argument at `param`, lifting the principal value `principal`
    /// onto the branch interpolated from the samples.
    pub fn lift(&self, param: f64, principal: f64) -> f64 {
        let idx = self.samples.partition_point(|p| p.param <= param);
        let reference = if idx == 0 {
            self.samples[0].unwrapped_arg
        } else if idx >= self.samples.len() {
            self.samples[self.samples.len() - 1].unwrapped_arg
        } else {
            let a = &self.samples[idx - 1];
            let b = &self.samples[idx];
            let t = (param - a.param) / (b.param - a.param);
            a.unwrapped_arg + t * (b.unwrapped_arg - a.unwrapped_arg)
        };
        principal + TAU * ((reference - principal) / TAU).round()
    }

    pub fn total_increment(&self) -> f64 {
        self.samples[self.samples.len() - 1].unwrapped_arg - self.samples[0].unwrapped_arg
    }
}

/// Unwrapped `Arg θ̃₁` along a path.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    tau: TauParameter,
    settings: ThetaSettings,
    track: ArgTrack,
}

impl PhaseProfile {
    pub fn tau(&self) -> &TauParameter {
        &self.tau
    }

    pub fn samples(&self) -> &[PhaseSample] {
        &self.track.samples
    }

    /// Largest accepted increment between consecutive samples.
    pub fn max_step_phase(&self) -> f64 {
        self.track.max_step
    }

    /// Whether any interval needed bisection beyond the initial sampling.
    pub fn refined(&self) -> bool {
        self.track.refined
    }

    pub fn total_increment(&self) -> f64 {
        self.track.total_increment()
    }

    /// Unwrapped argument at an arbitrary point `position` reached at path
    /// parameter `param`.
    pub fn arg_at(&self, param: f64, position: Complex64) -> Result<f64> {
        if self.tau.lattice_distance(position) < ZERO_GUARD {
            return Err(Error::near_zero(position, ZERO_GUARD));
        }
        let v = theta1_normalized(position, &self.tau, &self.settings)?;
        Ok(self.track.lift(param, v.arg()))
    }
}

fn guarded_theta(tau: &TauParameter, settings: &ThetaSettings, z: Complex64) -> Result<Complex64> {
    if tau.lattice_distance(z) < ZERO_GUARD {
        return Err(Error::near_zero(z, ZERO_GUARD));
    }
    theta1_normalized(z, tau, settings)
}

/// Branch-continuous `Arg θ̃₁` along `path`, anchored at its first sample.
pub fn unwrap_phase(tau: &TauParameter, path: &PathSpec) -> Result<PhaseProfile> {
    unwrap_phase_with(tau, path, &ThetaSettings::default())
}

pub fn unwrap_phase_with(
    tau: &TauParameter,
    path: &PathSpec,
    settings: &ThetaSettings,
) -> Result<PhaseProfile> {
    let track = track_arg(path, |s| guarded_theta(tau, settings, path.position(s)))?;
    Ok(PhaseProfile {
        tau: *tau,
        settings: *settings,
        track,
    })
}

fn check_unit_interior(x: f64) -> Result<()> {
    if !(x > ZERO_GUARD && x < 1.0 - ZERO_GUARD) {
        return Err(Error::domain(format!("x = {x} must lie inside (0, 1)")));
    }
    Ok(())
}

/// `B^ell(1; x; τ) = -2 Arg θ̃₁(x|τ)`, the branch continued along the real
/// axis from `x = 1/2`.
pub fn sl_seed(tau: &TauParameter, x: f64) -> Result<f64> {
    check_unit_interior(x)?;
    let settings = ThetaSettings::default();
    if x == 0.5 {
        return Ok(-2.0 * guarded_theta(tau, &settings, Complex64::new(x, 0.0))?.arg());
    }
    let profile = unwrap_phase(tau, &PathSpec::real_segment(0.5, x)?)?;
    Ok(-2.0 * profile.samples().last().expect("non-empty").unwrapped_arg)
}

/// `B^ell(2; x; τ) = -2 ∫_0^x Arg θ̃₁(t|τ) dt` by direct quadrature of the
/// unwrapped phase, the branch anchored at `t → 0⁺` where θ̃₁(t) ~ t.
pub fn sl_order2(tau: &TauParameter, x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0 - DOMAIN_MARGIN) {
        return Err(Error::domain(format!(
            "x = {x} must lie in (0, {}]",
            1.0 - DOMAIN_MARGIN
        )));
    }
    let settings = ThetaSettings::default();
    let prime = theta1_prime_zero(tau, &settings)?;
    // θ̃₁(t)/t is zero-free on [0, x] and equals 1 at t = 0
    let ratio = |t: f64| -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let z = Complex64::new(t, 0.0);
        Ok(theta1_series(z, tau, &settings)? / (prime * t))
    };
    let path = PathSpec::real_segment(0.0, x)?;
    let track = track_arg(&path, |s| ratio(x * s))?;
    let integral = tanh_sinh(
        |t| {
            let principal = ratio(t)?.arg();
            Ok(Complex64::new(track.lift(t / x, principal), 0.0))
        },
        0.0,
        x,
        tol,
    )?;
    Ok(-2.0 * integral.value.re)
}

/// Signed phase increment along the horizontal segment from
/// `start + i·offset` to `end + i·offset`.
///
/// Passing just above a real zero between `start` and `end` changes the
/// phase by close to ±π; the sign follows the orientation.
pub fn nodal_jump(tau: &TauParameter, start: f64, end: f64, offset: f64) -> Result<f64> {
    if !(offset > ZERO_GUARD) || !start.is_finite() || !end.is_finite() || start >= end {
        return Err(Error::domain(
            "nodal crossing needs start < end and offset above the zero guard",
        ));
    }
    let path = PathSpec::segment(Complex64::new(start, offset), Complex64::new(end, offset))?
        .with_samples_hint(64)?;
    Ok(unwrap_phase(tau, &path)?.total_increment())
}

/// Total phase increment of θ̃₁ around a circle.
pub fn winding_increment(tau: &TauParameter, center: Complex64, radius: f64) -> Result<f64> {
    // nearest lattice point other than the one at the center, if any
    let tr = tau.tau() - tau.tau().re.round();
    let base = center - tr * (center.im / tr.im).round();
    let base = base - base.re.round();
    let mut dists: Vec<f64> = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            dists.push((base - a as f64 - tr * b as f64).norm());
        }
    }
    dists.sort_by(|x, y| x.total_cmp(y));
    let clearance = if dists[0] < ZERO_GUARD {
        dists[1]
    } else {
        dists[0]
    };
    if !(radius > 10.0 * ZERO_GUARD && radius < 0.5 * clearance) {
        return Err(Error::domain(format!(
            "radius {radius} must lie in ({}, {})",
            10.0 * ZERO_GUARD,
            0.5 * clearance
        )));
    }
    let path = PathSpec::circle(center, radius, CIRCLE_SEGMENTS)?;
    Ok(unwrap_phase(tau, &path)?.total_increment())
}

/// Number of zeros of θ̃₁ enclosed by the circle (counted with multiplicity).
pub fn winding_number(tau: &TauParameter, center: Complex64, radius: f64) -> Result<i64> {
    Ok((winding_increment(tau, center, radius)? / TAU).round() as i64)
}

/// `Im(θ̃₁′/θ̃₁)` at a real point, the derivative of the unwrapped phase.
pub fn phase_derivative(tau: &TauParameter, x: f64) -> Result<f64> {
    Ok(theta1_log_derivative(Complex64::new(x, 0.0), tau, &ThetaSettings::default())?.im)
}
