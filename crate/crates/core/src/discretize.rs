//! Discrete self-adjoint models of the circle Dirac operator.
//!
//! Grid sites `θ_j = 2πj/n`, spacing `h = 2π/n`. Spinors are written in
//! the flat frame: the bounding structure is an antiperiodic boundary
//! condition, the non-bounding one periodic. In this frame the bounding
//! operator is `i d/dθ` on antiperiodic functions, unitarily equivalent
//! (conjugation by `e^{iθ/2}`) to `i d/dθ + 1/2` on periodic ones.
//!
//! The infinite cyclic cover is the lattice `ℤ` of sites `s = p·n + j`;
//! the deck transformation shifts `p` and acts on spinors by the sign
//! `σ = −1` (bounding) or `+1` (non-bounding).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{CLIFFORD_SIGN, GROUPING_TOL};
use crate::error::{Error, Result};
use crate::floquet::LaurentSymbol;
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::spectra::{SpectrumSample, SpinStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Exact Fourier-mode model.
    Spectral,
    /// `i(ψ_{j+1} − ψ_{j−1})/(2h)`.
    CentralDifference,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spectral" => Ok(Scheme::Spectral),
            "central" | "central-difference" | "centraldifference" | "cd" => {
                Ok(Scheme::CentralDifference)
            }
            other => Err(Error::InvalidInput(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Discrete twisted Dirac operator `D^c` on `n` grid sites.
#[derive(Debug, Clone)]
pub struct DiscreteDirac {
    pub n: usize,
    pub scheme: Scheme,
    pub spin: SpinStructure,
    pub c: f64,
    pub matrix: ComplexMatrix,
}

/// Grid values of a map to the circle, lifted to the reals. The lift on
/// the cover satisfies `values[j + n] = values[j] + degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    values: Vec<f64>,
    degree: i64,
}

impl WeightFunction {
    pub fn new(values: Vec<f64>, degree: i64) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("weight needs finite values".into()));
        }
        Ok(Self { values, degree })
    }

    /// `degree·θ/2π + periodic(θ)` sampled on the grid.
    pub fn from_fn(n: usize, degree: i64, periodic: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / n as f64;
                degree as f64 * j as f64 / n as f64 + periodic(theta)
            })
            .collect();
        Self::new(values, degree)
    }

    /// Lift of the identity map of the circle, `j/n`.
    pub fn degree_one(n: usize) -> Self {
        Self::from_fn(n, 1, |_| 0.0).expect("finite")
    }

    /// The exact weight `u = sin θ`.
    pub fn sine(n: usize) -> Self {
        Self::from_fn(n, 0, f64::sin).expect("finite")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn deck_sign(spin: SpinStructure) -> f64 {
    match spin {
        SpinStructure::Bounding => -1.0,
        SpinStructure::NonBounding => 1.0,
    }
}

/// Fourier modes carried by the spectral model: half-integers for the
/// bounding structure, integers `−n/2+1 ..= n/2` otherwise.
fn spectral_modes(n: usize, spin: SpinStructure) -> Vec<f64> {
    let half = (n / 2) as i64;
    match spin {
        SpinStructure::Bounding => (-half..half).map(|k| k as f64 + 0.5).collect(),
        SpinStructure::NonBounding => (-half + 1..=half).map(|k| k as f64).collect(),
    }
}

fn theta(n: usize, j: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64
}

/// Quasi-periodic spectral operator: modes `e^{i(m+ν)θ}` with eigenvalue
/// `−(m+ν) + s·c`.
fn spectral_matrix(n: usize, spin: SpinStructure, c: f64, nu: Complex64) -> ComplexMatrix {
    let modes = spectral_modes(n, spin);
    let i = Complex64::i();
    // Entries depend only on a − b; index the 2n − 1 differences by a − b + n − 1.
    let by_offset: Vec<Complex64> = (0..2 * n - 1)
        .map(|k| {
            let d = theta(n, k) - theta(n, n - 1);
            modes
                .iter()
                .map(|&m| {
                    let q = nu + m;
                    let lambda = -q + CLIFFORD_SIGN * c;
                    lambda * (i * q * d).exp()
                })
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    ComplexMatrix::from_fn(n, n, |a, b| by_offset[a + n - 1 - b])
}

fn check_grid(n: usize) -> Result<()> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "grid size must be even and at least 8, got {n}"
        )));
    }
    Ok(())
}

/// Builds `D^c` on `n` sites.
pub fn build_circle_dirac(n: usize, scheme: Scheme, spin: SpinStructure, c: f64) -> Result<DiscreteDirac> {
    check_grid(n)?;
    if !c.is_finite() {
        return Err(Error::InvalidInput("twist parameter must be finite".into()));
    }
    let matrix = match scheme {
        Scheme::Spectral => spectral_matrix(n, spin, c, Complex64::new(0.0, 0.0)),
        Scheme::CentralDifference => {
            central_difference_symbol(n, spin, c).eval(Complex64::new(1.0, 0.0))?
        }
    };
    Ok(DiscreteDirac {
        n,
        scheme,
        spin,
        c,
        matrix,
    })
}

/// Laurent symbol of the central-difference cover operator in the gauge
/// where the deck transformation acts trivially: `A_0` is the open
/// period block, `A_{∓1}` carry the wrap hopping times the deck sign.
fn central_difference_symbol(n: usize, spin: SpinStructure, c: f64) -> LaurentSymbol {
    let h = 2.0 * PI / n as f64;
    let hop = Complex64::new(0.0, 1.0 / (2.0 * h));
    let sigma = deck_sign(spin);
    let mut a0 = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        a0[(j, j)] = Complex64::new(CLIFFORD_SIGN * c, 0.0);
        if j + 1 < n {
            a0[(j, j + 1)] = hop;
            a0[(j + 1, j)] = -hop;
        }
    }
    let mut forward = ComplexMatrix::zeros(n, n);
    forward[(n - 1, 0)] = hop * sigma;
    let mut backward = ComplexMatrix::zeros(n, n);
    backward[(0, n - 1)] = -hop * sigma;
    LaurentSymbol::new(vec![(-1, forward), (0, a0), (1, backward)]).expect("consistent blocks")
}

impl DiscreteDirac {
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        Ok(hermitian_eigenvalues(&self.matrix, tol)?.eigenvalues)
    }

    pub fn spectrum(&self, tol: f64) -> Result<SpectrumSample> {
        Ok(SpectrumSample::from_eigenvalues(
            &self.eigenvalues(tol)?,
            self.n / 2,
            GROUPING_TOL,
            false,
        ))
    }

    /// Closed-form eigenvalues of the spectral model, `−m + s·c`.
    pub fn exact_spectral_eigenvalues(&self) -> Option<Vec<f64>> {
        (self.scheme == Scheme::Spectral).then(|| {
            let mut v: Vec<f64> = spectral_modes(self.n, self.spin)
                .iter()
                .map(|m| -m + CLIFFORD_SIGN * self.c)
                .collect();
            v.sort_by(f64::total_cmp);
            v
        })
    }

    /// Laurent symbol of the periodic cover operator. Only the
    /// central-difference scheme is banded.
    pub fn laurent_symbol(&self) -> Result<LaurentSymbol> {
        match self.scheme {
            Scheme::CentralDifference => Ok(central_difference_symbol(self.n, self.spin, self.c)),
            Scheme::Spectral => Err(Error::InvalidInput(
                "the spectral scheme is non-local and has no banded symbol".into(),
            )),
        }
    }

    /// Matrix of the cover operator restricted to quasi-periodic data
    /// `τ*Ψ = z^{−1}Ψ`, written on one period's sites.
    fn quasi_periodic(&self, ln_z: Complex64) -> Result<ComplexMatrix> {
        match self.scheme {
            Scheme::Spectral => {
                // Σ_m λ(m+ν) e^{i(m+ν)(θ_a−θ_b)}/n = E diag(λ) E^{-1} with
                // E = diag(e^{iνθ}) F; the multiplier is z = e^{−2πiν}.
                let nu = Complex64::i() * ln_z / (2.0 * PI);
                Ok(spectral_matrix(self.n, self.spin, self.c, nu))
            }
            Scheme::CentralDifference => self.laurent_symbol()?.eval(ln_z.exp()),
        }
    }
}

/// Massive two-component operator `D ⊗ σ_x + m·1 ⊗ σ_z`; its square is
/// `D² + m²`.
pub fn massive_matrix(d: &ComplexMatrix, mass: f64) -> ComplexMatrix {
    let sx = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("2x2");
    let sz = ComplexMatrix::from_real_diagonal(&[mass, -mass]);
    &d.kron(&sx) + &ComplexMatrix::identity(d.rows()).kron(&sz)
}

/// Symbol of the massive operator built from a cover symbol.
pub fn massive_symbol(s: &LaurentSymbol, mass: f64) -> LaurentSymbol {
    let sx = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("2x2");
    let sz = ComplexMatrix::from_real_diagonal(&[mass, -mass]);
    let mut blocks: Vec<(i32, ComplexMatrix)> = s
        .coefficients()
        .map(|(j, a)| (j, a.kron(&sx)))
        .collect();
    let id = ComplexMatrix::identity(s.block_size());
    match blocks.iter_mut().find(|(j, _)| *j == 0) {
        Some((_, a0)) => *a0 = &*a0 + &id.kron(&sz),
        None => blocks.push((0, id.kron(&sz))),
    }
    LaurentSymbol::new(blocks).expect("consistent blocks")
}

/// `e^{−icu} D e^{icu}` for an exact weight `u` (degree 0).
pub fn gauge_conjugate(d: &DiscreteDirac, u: &WeightFunction, c: f64) -> Result<ComplexMatrix> {
    if u.degree() != 0 {
        return Err(Error::Contract(format!(
            "gauge conjugation needs a degree-0 weight, got degree {}",
            u.degree()
        )));
    }
    if u.len() != d.n {
        return Err(Error::Dimension(format!("weight has {} values for n = {}", u.len(), d.n)));
    }
    let phase: Vec<Complex64> = u
        .values()
        .iter()
        .map(|&x| Complex64::new(0.0, c * x).exp())
        .collect();
    Ok(ComplexMatrix::from_fn(d.n, d.n, |a, b| {
        phase[a].conj() * d.matrix[(a, b)] * phase[b]
    }))
}

/// Output of the Fourier–Laplace transform at one point `z`.
#[derive(Debug, Clone)]
pub struct FourierLaplaceOperator {
    pub z: Complex64,
    /// Branch of `ln z` used for `z^{f̃} = exp(f̃·ln z)`.
    pub ln_z: Complex64,
    pub matrix: ComplexMatrix,
    /// The zero-order part `D_z − D`.
    pub commutator: ComplexMatrix,
}

/// Principal branch `ln|z| + i·arg z`, `arg ∈ (−π, π]`.
pub fn principal_ln(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), z.arg())
}

/// Floquet multiplier and branch realizing the twist `c`:
/// `z = e^{−2πic}`, `ln z = −2πic`.
pub fn twist_multiplier(c: f64) -> (Complex64, Complex64) {
    let ln_z = Complex64::new(0.0, -2.0 * PI * c);
    (ln_z.exp(), ln_z)
}

/// `D_z = z^{f̃} D z^{−f̃}` on quasi-periodic data, for a degree-1 lift `f`.
///
/// `ln_z` selects the branch; the principal one is used when `None`.
pub fn fourier_laplace_family(
    d: &DiscreteDirac,
    f: &WeightFunction,
    z: Complex64,
    ln_z: Option<Complex64>,
) -> Result<FourierLaplaceOperator> {
    if z.norm() == 0.0 {
        return Err(Error::InvalidInput("z = 0 is not in ℂ*".into()));
    }
    if d.c != 0.0 {
        return Err(Error::Contract("the transform starts from the untwisted operator".into()));
    }
    if f.degree() != 1 {
        return Err(Error::Contract(format!("lift must have degree 1, got {}", f.degree())));
    }
    if f.len() != d.n {
        return Err(Error::Dimension(format!("weight has {} values for n = {}", f.len(), d.n)));
    }
    let ln_z = ln_z.unwrap_or_else(|| principal_ln(z));
    if (ln_z.exp() - z).norm() > 1e-12 * z.norm().max(1.0) {
        return Err(Error::InvalidInput("ln_z is not a logarithm of z".into()));
    }
    let q = d.quasi_periodic(ln_z)?;
    let weight: Vec<Complex64> = f.values().iter().map(|&x| (ln_z * x).exp()).collect();
    let matrix = ComplexMatrix::from_fn(d.n, d.n, |a, b| weight[a] * q[(a, b)] / weight[b]);
    let commutator = &matrix - &d.matrix;
    Ok(FourierLaplaceOperator {
        z,
        ln_z,
        matrix,
        commutator,
    })
}

/// Open finite section of the cover operator over `periods` periods.
pub fn cover_operator_sections(d: &DiscreteDirac, f: &WeightFunction, periods: usize) -> Result<ComplexMatrix> {
    if f.degree() == 0 {
        return Err(Error::Contract("the cover needs a weight of nonzero degree".into()));
    }
    if periods == 0 {
        return Err(Error::InvalidInput("at least one period".into()));
    }
    let sym = d.laurent_symbol()?;
    if periods == 1 {
        return Ok(sym.coefficient(0).cloned().unwrap_or_else(|| ComplexMatrix::zeros(d.n, d.n)));
    }
    Ok(crate::floquet::truncate(&sym, periods))
}
