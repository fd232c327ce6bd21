//! Closed-form twisted Dirac spectra on model spin manifolds.
//!
//! Circle spectra follow the convention in [`crate::constants::CLIFFORD_SIGN`]:
//! the bounding structure gives `{k + 1/2 − c}`, the non-bounding one
//! `{k − c}`. The round unit sphere `S^ℓ` has Dirac eigenvalues
//! `±(ℓ/2 + k)` with multiplicity `2^⌊ℓ/2⌋·C(k+ℓ−1, k)`.

use serde::{Deserialize, Serialize};

use crate::constants::{CLIFFORD_SIGN, EDGE_EXCLUSION, GROUPING_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinStructure {
    /// Extends over the disk; antiperiodic spinors, half-integer spectrum.
    Bounding,
    /// Periodic spinors; the untwisted operator has a kernel.
    NonBounding,
}

impl SpinStructure {
    /// Constant offset of the untwisted circle spectrum.
    pub fn offset(self) -> f64 {
        match self {
            SpinStructure::Bounding => 0.5,
            SpinStructure::NonBounding => 0.0,
        }
    }

    /// Twist values in `[0, 1)` at which `D^c` has a kernel.
    pub fn kernel_twist(self) -> f64 {
        // k + offset + s·c = 0  <=>  c ≡ offset (mod 1) for s = ±1.
        self.offset()
    }
}

impl std::str::FromStr for SpinStructure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bounding" | "b" => Ok(SpinStructure::Bounding),
            "nonbounding" | "non-bounding" | "nb" => Ok(SpinStructure::NonBounding),
            other => Err(Error::InvalidInput(format!("unknown spin structure `{other}`"))),
        }
    }
}

/// Sorted eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pairs: Vec<(f64, usize)>,
    band: usize,
    grouping_tol: f64,
    symmetric: bool,
}

impl SpectrumSample {
    /// Groups raw eigenvalues: neighbours closer than `grouping_tol` merge
    /// into one entry (at their mean) whose multiplicity is the count.
    pub fn from_eigenvalues(values: &[f64], band: usize, grouping_tol: f64, symmetric: bool) -> Self {
        Self::from_weighted(values.iter().map(|&v| (v, 1)).collect(), band, grouping_tol, symmetric)
    }

    pub fn from_weighted(
        mut values: Vec<(f64, usize)>,
        band: usize,
        grouping_tol: f64,
        symmetric: bool,
    ) -> Self {
        values.retain(|&(_, m)| m > 0);
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pairs: Vec<(f64, usize)> = Vec::new();
        let mut sum = 0.0;
        let mut last = f64::NEG_INFINITY;
        for (v, m) in values {
            match pairs.last_mut() {
                Some((mean, mult)) if v - last <= grouping_tol => {
                    sum += v * m as f64;
                    *mult += m;
                    *mean = sum / *mult as f64;
                }
                _ => {
                    sum = v * m as f64;
                    pairs.push((v, m));
                }
            }
            last = v;
        }
        Self {
            pairs,
            band,
            grouping_tol,
            symmetric,
        }
    }

    pub fn pairs(&self) -> &[(f64, usize)] {
        &self.pairs
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    /// Whether the generating operator anticommutes with a grading, so
    /// the full spectrum is symmetric under `λ → −λ`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Total count with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat(v).take(m))
            .collect()
    }

    pub fn min(&self) -> Option<f64> {
        self.pairs.first().map(|p| p.0)
    }

    pub fn max(&self) -> Option<f64> {
        self.pairs.last().map(|p| p.0)
    }

    pub fn min_abs(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.0.abs()).min_by(f64::total_cmp)
    }

    pub fn multiplicity_of(&self, lambda: f64, tol: f64) -> usize {
        self.pairs
            .iter()
            .filter(|p| (p.0 - lambda).abs() <= tol)
            .map(|p| p.1)
            .sum()
    }

    pub fn contains(&self, lambda: f64, tol: f64) -> bool {
        self.multiplicity_of(lambda, tol) > 0
    }

    /// Spectrum of the square.
    pub fn squares(&self) -> SpectrumSample {
        SpectrumSample::from_weighted(
            self.pairs.iter().map(|&(v, m)| (v * v, m)).collect(),
            self.band,
            self.grouping_tol,
            false,
        )
    }

    /// Checks `λ → −λ` symmetry with equal multiplicities.
    pub fn is_reflection_symmetric(&self, tol: f64) -> bool {
        self.pairs
            .iter()
            .all(|&(v, m)| self.multiplicity_of(-v, tol) == m)
    }

    /// Expanded eigenvalues with the `edge` outermost removed on each side.
    pub fn interior(&self, edge: usize) -> Vec<f64> {
        let all = self.expanded();
        if all.len() <= 2 * edge {
            return Vec::new();
        }
        all[edge..all.len() - edge].to_vec()
    }
}

fn common_window(a: &SpectrumSample, b: &SpectrumSample) -> Option<(Vec<f64>, Vec<f64>)> {
    let ia = a.interior(EDGE_EXCLUSION);
    let ib = b.interior(EDGE_EXCLUSION);
    let lo = ia.first()?.max(*ib.first()?);
    let hi = ia.last()?.min(*ib.last()?);
    if lo > hi {
        return None;
    }
    let pad = a.grouping_tol.max(b.grouping_tol);
    let pick = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .copied()
            .filter(|&x| x >= lo - pad && x <= hi + pad)
            .collect()
    };
    Some((pick(&ia), pick(&ib)))
}

/// Compares two truncated spectra after dropping the two outermost
/// eigenvalues on each side and restricting to the common interval.
pub fn spectra_match(a: &SpectrumSample, b: &SpectrumSample, tol: f64) -> bool {
    match common_window(a, b) {
        Some((x, y)) => {
            !x.is_empty()
                && x.len() == y.len()
                && x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= tol)
        }
        None => false,
    }
}

/// Largest distance from an eigenvalue of either sample to the nearest
/// eigenvalue of the other, over the common interior window.
pub fn aligned_distance(a: &SpectrumSample, b: &SpectrumSample) -> f64 {
    let Some((x, y)) = common_window(a, b) else {
        return f64::INFINITY;
    };
    let nearest = |v: f64, set: &[f64]| {
        set.iter()
            .map(|w| (v - w).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let d1 = x.iter().map(|&v| nearest(v, &y)).fold(0.0, f64::max);
    let d2 = y.iter().map(|&v| nearest(v, &x)).fold(0.0, f64::max);
    d1.max(d2)
}

/// Model spin manifolds with closed-form Dirac spectra.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelManifold {
    Circle(SpinStructure),
    /// Round unit sphere `S^ℓ`, `ℓ ≥ 1` (`ℓ = 1` is the bounding circle).
    Sphere(u32),
    ProductWithSphere { base: SpectrumSample, l: u32 },
}

impl ModelManifold {
    /// Spectrum of the squared Dirac operator up to `cutoff`, using a
    /// truncation deep enough to contain everything below it.
    pub fn squared_spectrum(&self, cutoff: f64) -> Result<SpectrumSample> {
        let radius = cutoff.max(0.0).sqrt().ceil() as usize + 2;
        match self {
            ModelManifold::Circle(spin) => {
                let s = circle_spectrum(*spin, 0.0, radius)?.squares();
                Ok(truncate(&s, cutoff))
            }
            ModelManifold::Sphere(l) => {
                let s = sphere_spectrum(*l, radius)?.squares();
                Ok(truncate(&s, cutoff))
            }
            ModelManifold::ProductWithSphere { base, l } => {
                product_square_spectrum(base, &sphere_spectrum(*l, radius)?, cutoff)
            }
        }
    }
}

fn truncate(s: &SpectrumSample, cutoff: f64) -> SpectrumSample {
    SpectrumSample::from_weighted(
        s.pairs().iter().copied().filter(|p| p.0 <= cutoff).collect(),
        s.band(),
        s.grouping_tol(),
        false,
    )
}

/// Spectrum of the twisted circle operator `D^c` with `|k| ≤ band`.
pub fn circle_spectrum(spin: SpinStructure, c: f64, band: usize) -> Result<SpectrumSample> {
    if band == 0 {
        return Err(Error::InvalidInput("band must be at least 1".into()));
    }
    if !c.is_finite() {
        return Err(Error::InvalidInput("twist parameter must be finite".into()));
    }
    let b = band as i64;
    let values: Vec<f64> = (-b..=b)
        .map(|k| k as f64 + spin.offset() + CLIFFORD_SIGN * c)
        .collect();
    Ok(SpectrumSample::from_eigenvalues(&values, band, GROUPING_TOL, false))
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Multiplicity of `±(ℓ/2 + k)` on the round `S^ℓ`.
pub fn sphere_multiplicity(l: u32, k: u64) -> u128 {
    (1u128 << (l / 2)) * binomial(k + l as u64 - 1, k)
}

/// Dirac spectrum of the round unit sphere for `0 ≤ k ≤ kmax`.
pub fn sphere_spectrum(l: u32, kmax: usize) -> Result<SpectrumSample> {
    if l == 0 {
        return Err(Error::InvalidInput("sphere dimension must be at least 1".into()));
    }
    let mut values = Vec::with_capacity(2 * (kmax + 1));
    for k in 0..=kmax as u64 {
        let lambda = l as f64 / 2.0 + k as f64;
        let m = usize::try_from(sphere_multiplicity(l, k))
            .map_err(|_| Error::InvalidInput("multiplicity overflow".into()))?;
        values.push((lambda, m));
        values.push((-lambda, m));
    }
    Ok(SpectrumSample::from_weighted(values, kmax, GROUPING_TOL, true))
}

/// Spectrum of `D_N² ⊗ 1 + 1 ⊗ D_S²` for a product with a sphere, up to
/// `cutoff`.
pub fn product_square_spectrum(
    base: &SpectrumSample,
    sphere: &SpectrumSample,
    cutoff: f64,
) -> Result<SpectrumSample> {
    if base.is_empty() || sphere.is_empty() {
        return Err(Error::InvalidInput("empty spectrum in product".into()));
    }
    let mut values = Vec::new();
    for &(mu, m1) in base.pairs() {
        for &(nu, m2) in sphere.pairs() {
            let v = mu * mu + nu * nu;
            if v <= cutoff {
                values.push((v, m1 * m2));
            }
        }
    }
    Ok(SpectrumSample::from_weighted(
        values,
        base.band().min(sphere.band()),
        base.grouping_tol().max(sphere.grouping_tol()),
        false,
    ))
}

/// Whether the family has the same spectrum at `c` and `c + 1`.
pub fn check_twist_periodicity<F>(spectra_fn: F, c: f64, tol: f64) -> bool
where
    F: Fn(f64) -> SpectrumSample,
{
    spectra_match(&spectra_fn(c), &spectra_fn(c + 1.0), tol)
}

/// Whether the spectrum at `c` equals the untwisted one; holds for
/// families twisted by an exact form.
pub fn check_exact_twist_invariance<F>(spectra_fn: F, c: f64, tol: f64) -> bool
where
    F: Fn(f64) -> SpectrumSample,
{
    spectra_match(&spectra_fn(c), &spectra_fn(0.0), tol)
}

/// `min spec(D²) ≥ κ_min/4 − tol`.
pub fn lichnerowicz_bound_check(spectrum_sq: &SpectrumSample, kappa_min: f64, tol: f64) -> Result<bool> {
    let Some(min) = spectrum_sq.min() else {
        return Err(Error::InvalidInput("empty spectrum".into()));
    };
    if min < -tol {
        return Err(Error::Contract(format!(
            "squared spectrum has negative entry {min}"
        )));
    }
    Ok(min >= kappa_min / 4.0 - tol)
}
