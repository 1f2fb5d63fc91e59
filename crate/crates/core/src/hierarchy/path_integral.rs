use num_complex::Complex64;

use super::Seed;
use crate::error::{Error, Result};
use crate::path::PathSpec;
use crate::phase::track_arg;
use crate::quadrature::tanh_sinh;
use crate::theta::ZERO_GUARD;

const PATH_TOL: f64 = 1e-12;

/// `n`-fold iterated integral of `F_1 = log S` along `path`:
///
/// ```text
/// ∫_path (end - w)^{n-1}/(n-1)! · F_1(w) dw
/// ```
///
/// For a path starting at 0 this is `F_{n+1}(end)`. The branch of `log S`
/// is continued along the path; from the origin it starts as
/// `log w + log S′(0)`, otherwise it is principal at the first waypoint.
pub fn path_integrate(seed: &Seed, path: &PathSpec, n: u32) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("path integrals start at n = 1"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let from_origin = path.start() == zero;
    let guarded = |w: Complex64| -> Result<Complex64> {
        if seed.zero_distance(w) < ZERO_GUARD && !(from_origin && w.norm() < ZERO_GUARD) {
            return Err(Error::near_zero(w, ZERO_GUARD));
        }
        Ok(w)
    };

    let f1: Box<dyn Fn(f64) -> Result<Complex64> + '_> = if from_origin {
        let ratio_track = track_arg(path, |s| seed.ratio(guarded(path.position(s))?))?;
        let w_track = track_arg(path, |s| {
            let w = path.position(s);
            Ok(if w == zero { path.velocity(0) } else { w })
        })?;
        Box::new(move |s: f64| {
            let w = guarded(path.position(s))?;
            if w == zero {
                return Err(Error::domain("log S is singular at the origin"));
            }
            let r = seed.ratio(w)?;
            Ok(Complex64::new(
                w.norm().ln() + r.norm().ln(),
                w_track.lift(s, w.arg()) + ratio_track.lift(s, r.arg()),
            ))
        })
    } else {
        let track = track_arg(path, |s| seed.eval(guarded(path.position(s))?))?;
        Box::new(move |s: f64| {
            let v = seed.eval(guarded(path.position(s))?)?;
            Ok(Complex64::new(v.norm().ln(), track.lift(s, v.arg())))
        })
    };

    let end = path.end();
    let mut fact = 1.0;
    for k in 1..n {
        fact *= k as f64;
    }
    let mut total = zero;
    for i in 0..path.segments() {
        let a = path.waypoints()[i];
        let v = path.velocity(i);
        let r = tanh_sinh(
            |t| {
                let w = a + v * t;
                let kernel = (end - w).powu(n - 1) / fact;
                Ok(kernel * f1(i as f64 + t)? * v)
            },
            0.0,
            1.0,
            PATH_TOL,
        )?;
        total += r.value;
    }
    Ok(total)
}
