use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::scan::is_fredholm;
use super::LaurentSymbol;
use crate::constants::FREDHOLM_TOL;
use crate::error::{Error, Result};

const INITIAL_STEPS: usize = 256;
const MAX_HALVINGS: u32 = 40;

fn det_at(s: &LaurentSymbol, theta: f64) -> Result<Complex64> {
    let d = s.eval(Complex64::from_polar(1.0, theta))?.determinant()?;
    if d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite() {
        return Err(Error::NotFredholm {
            min_singular: 0.0,
            tol: 0.0,
        });
    }
    Ok(d)
}

fn accumulate(
    s: &LaurentSymbol,
    t0: f64,
    d0: Complex64,
    t1: f64,
    d1: Complex64,
    depth: u32,
) -> Result<f64> {
    let delta = (d1 / d0).arg();
    if delta.abs() < FRAC_PI_2 || depth >= MAX_HALVINGS {
        return Ok(delta);
    }
    let tm = 0.5 * (t0 + t1);
    let dm = det_at(s, tm)?;
    Ok(accumulate(s, t0, d0, tm, dm, depth + 1)? + accumulate(s, tm, dm, t1, d1, depth + 1)?)
}

/// Winding number of `det A(z)` around 0 as `z` runs counterclockwise
/// over the unit circle. Steps are halved until each argument increment
/// is below `π/2`.
pub fn winding_number(s: &LaurentSymbol) -> Result<i64> {
    let step = 2.0 * PI / INITIAL_STEPS as f64;
    let mut total = 0.0;
    let mut t0 = 0.0;
    let mut d0 = det_at(s, t0)?;
    for k in 1..=INITIAL_STEPS {
        let t1 = k as f64 * step;
        let d1 = det_at(s, t1)?;
        total += accumulate(s, t0, d0, t1, d1, 0)?;
        t0 = t1;
        d0 = d1;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Index of the half-line compression: `−winding(det A)`.
pub fn toeplitz_index(s: &LaurentSymbol) -> Result<i64> {
    let m = super::scan::min_singular_on_circle(s, crate::constants::CIRCLE_GRID, crate::constants::REFINE_TOL)?;
    if m.value <= FREDHOLM_TOL {
        return Err(Error::NotFredholm {
            min_singular: m.value,
            tol: FREDHOLM_TOL,
        });
    }
    Ok(-winding_number(s)?)
}

/// Fredholm verdict and index in one call, failing if not Fredholm.
pub fn checked_index(s: &LaurentSymbol, tol: f64) -> Result<i64> {
    let r = is_fredholm(s, tol)?;
    if !r.is_fredholm {
        return Err(Error::NotFredholm {
            min_singular: r.min_singular,
            tol,
        });
    }
    match r.index {
        Some(i) => Ok(i),
        None => Ok(-winding_number(s)?),
    }
}
