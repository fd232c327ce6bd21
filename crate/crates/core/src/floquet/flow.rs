//! Spectral flow of one-parameter Hermitian families.

use serde::{Deserialize, Serialize};

use crate::constants::{EDGE_EXCLUSION, GROUPING_TOL};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::spectra::{spectra_match, SpectrumSample};

const BISECTION_STEPS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub parameter: f64,
    /// `+1` for an eigenvalue rising through 0, `−1` for one falling.
    pub direction: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFlowResult {
    pub flow: i64,
    pub crossings: Vec<Crossing>,
}

/// Options for [`spectral_flow_with`].
#[derive(Debug, Clone, Copy)]
pub struct FlowOptions {
    pub start: f64,
    pub end: f64,
    /// Eigenvalues with `|λ| ≤ zero_tol` count as non-negative.
    pub zero_tol: f64,
    /// Check that the endpoints are isospectral before counting.
    pub require_periodic: bool,
    /// Tolerance of the endpoint isospectrality check.
    pub periodicity_tol: f64,
    pub eig_tol: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            start: 0.0,
            end: 1.0,
            zero_tol: 1e-11,
            require_periodic: true,
            periodicity_tol: 1e-8,
            eig_tol: 1e-9,
        }
    }
}

struct Sample {
    negatives: usize,
    near_zero: bool,
}

fn sample<F>(family: &F, c: f64, opts: &FlowOptions) -> Result<(Sample, Vec<f64>)>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let ev = hermitian_eigenvalues(&family(c)?, opts.eig_tol)?.eigenvalues;
    let scale = ev.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let z = opts.zero_tol * scale;
    let s = Sample {
        negatives: ev.iter().filter(|&&x| x < -z).count(),
        near_zero: ev.iter().any(|x| x.abs() <= z),
    };
    Ok((s, ev))
}

fn endpoints_isospectral(ev0: &[f64], ev1: &[f64], tol: f64) -> bool {
    if ev0.len() != ev1.len() {
        return false;
    }
    if ev0.len() <= 2 * EDGE_EXCLUSION + 1 {
        return ev0.iter().zip(ev1).all(|(a, b)| (a - b).abs() <= tol);
    }
    let a = SpectrumSample::from_eigenvalues(ev0, ev0.len(), GROUPING_TOL, false);
    let b = SpectrumSample::from_eigenvalues(ev1, ev1.len(), GROUPING_TOL, false);
    spectra_match(&a, &b, tol)
}

/// Spectral flow over `[0, 1]` with default options.
pub fn spectral_flow<F>(family: F, steps: usize) -> Result<SpectralFlowResult>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    spectral_flow_with(family, steps, FlowOptions::default())
}

/// Net number of eigenvalues crossing 0, counted from the change in the
/// number of negative eigenvalues between `steps` uniform samples; each
/// change is located by bisection.
///
/// Unless disabled, the family must be isospectral at the two endpoints
/// (compared with the two outermost eigenvalues on each side excluded, so
/// truncated models qualify). An eigenvalue that stays at 0 across consecutive samples is
/// reported as a degenerate crossing.
pub fn spectral_flow_with<F>(family: F, steps: usize, opts: FlowOptions) -> Result<SpectralFlowResult>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    if steps == 0 || !(opts.end > opts.start) {
        return Err(Error::InvalidInput("need steps > 0 and a nonempty interval".into()));
    }
    let (first, ev0) = sample(&family, opts.start, &opts)?;
    if opts.require_periodic {
        let ev1 = hermitian_eigenvalues(&family(opts.end)?, opts.eig_tol)?.eigenvalues;
        if !endpoints_isospectral(&ev0, &ev1, opts.periodicity_tol) {
            return Err(Error::Contract(
                "family is not isospectral at the endpoints".into(),
            ));
        }
    }

    let h = (opts.end - opts.start) / steps as f64;
    let mut crossings = Vec::new();
    let mut prev = first;
    let mut prev_c = opts.start;
    for k in 1..=steps {
        let c = if k == steps { opts.end } else { opts.start + k as f64 * h };
        let (cur, _) = sample(&family, c, &opts)?;
        if prev.near_zero && cur.near_zero {
            return Err(Error::DegenerateCrossing { parameter: prev_c });
        }
        if cur.negatives != prev.negatives {
            let (mut lo, mut hi) = (prev_c, c);
            for _ in 0..BISECTION_STEPS {
                if hi - lo <= 1e-13 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let (m, _) = sample(&family, mid, &opts)?;
                if m.negatives == prev.negatives {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let at = 0.5 * (lo + hi);
            let delta = prev.negatives as i64 - cur.negatives as i64;
            let direction = delta.signum() as i32;
            for _ in 0..delta.unsigned_abs() {
                crossings.push(Crossing {
                    parameter: at,
                    direction,
                });
            }
        }
        prev = cur;
        prev_c = c;
    }
    let flow = crossings.iter().map(|c| c.direction as i64).sum();
    Ok(SpectralFlowResult { flow, crossings })
}
