//! Unit-circle scans of `σ_min(A(e^{iθ}))` and the Fredholm verdict.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::index::toeplitz_index;
use super::LaurentSymbol;
use crate::constants::{CIRCLE_GRID, REFINE_TOL};
use crate::error::{Error, Result};
use crate::linalg::singular_values;

/// Index computation is skipped above this `N·d`.
const INDEX_SIZE_LIMIT: usize = 64;

/// A point `e^{iθ}` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitPoint {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

impl UnitPoint {
    pub fn from_theta(theta: f64) -> Self {
        let theta = theta.rem_euclid(2.0 * PI);
        Self {
            theta,
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleMinimum {
    pub value: f64,
    pub witness: UnitPoint,
}

/// Verdict of the unit-circle invertibility test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FredholmReport {
    pub is_fredholm: bool,
    pub min_singular: f64,
    pub witness: Option<UnitPoint>,
    pub index: Option<i64>,
    pub grid_used: usize,
    pub tol: f64,
}

pub fn sigma_min_at(s: &LaurentSymbol, theta: f64) -> f64 {
    let a = s
        .eval(Complex64::from_polar(1.0, theta))
        .expect("unit circle avoids z = 0");
    if a.rows() == 1 {
        return a[(0, 0)].norm();
    }
    *singular_values(&a).last().expect("nonempty")
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Global minimum of `σ_min(A(e^{iθ}))`: a uniform scan on `grid` points,
/// then golden-section refinement around the three smallest samples.
pub fn min_singular_on_circle(s: &LaurentSymbol, grid: usize, refine_tol: f64) -> Result<CircleMinimum> {
    min_singular_on_circle_rotated(s, grid, refine_tol, 0.0)
}

/// Same scan with the grid rotated by `phase`.
pub fn min_singular_on_circle_rotated(
    s: &LaurentSymbol,
    grid: usize,
    refine_tol: f64,
    phase: f64,
) -> Result<CircleMinimum> {
    if grid < 16 {
        return Err(Error::InvalidInput(format!("grid must be at least 16, got {grid}")));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::InvalidInput("refine_tol must be positive".into()));
    }
    let step = 2.0 * PI / grid as f64;
    let samples: Vec<(f64, f64)> = (0..grid)
        .map(|k| {
            let t = phase + k as f64 * step;
            (t, sigma_min_at(s, t))
        })
        .collect();
    let mut order: Vec<usize> = (0..grid).collect();
    order.sort_by(|&i, &j| samples[i].1.total_cmp(&samples[j].1));

    let mut best = (samples[order[0]].0, samples[order[0]].1);
    for &k in order.iter().take(3) {
        let t = samples[k].0;
        let (x, v) = golden_section(|th| sigma_min_at(s, th), t - step, t + step, refine_tol);
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(CircleMinimum {
        value: best.1,
        witness: UnitPoint::from_theta(best.0),
    })
}

/// Fredholm verdict with the default grid.
pub fn is_fredholm(s: &LaurentSymbol, tol: f64) -> Result<FredholmReport> {
    is_fredholm_with_grid(s, tol, CIRCLE_GRID)
}

pub fn is_fredholm_with_grid(s: &LaurentSymbol, tol: f64, grid: usize) -> Result<FredholmReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let m = min_singular_on_circle(s, grid, REFINE_TOL)?;
    let is_fredholm = m.value > tol;
    let index = if is_fredholm && s.block_size() * s.bandwidth().max(1) <= INDEX_SIZE_LIMIT {
        Some(toeplitz_index(s)?)
    } else {
        None
    };
    Ok(FredholmReport {
        is_fredholm,
        min_singular: m.value,
        witness: Some(m.witness),
        index,
        grid_used: grid,
        tol,
    })
}
