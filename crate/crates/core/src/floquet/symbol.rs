use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Matrix Laurent polynomial `A(z) = Σ_j A_j z^j` of a banded periodic
/// lattice operator with `N×N` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSymbol {
    block: usize,
    coeffs: BTreeMap<i32, ComplexMatrix>,
}

impl LaurentSymbol {
    pub fn new(blocks: Vec<(i32, ComplexMatrix)>) -> Result<Self> {
        let Some(block) = blocks.first().map(|(_, a)| a.rows()) else {
            return Err(Error::InvalidInput("symbol has no coefficients".into()));
        };
        let mut coeffs = BTreeMap::new();
        for (j, a) in blocks {
            if a.rows() != block || a.cols() != block {
                return Err(Error::Dimension(format!(
                    "coefficient {j} is {}x{}, expected {block}x{block}",
                    a.rows(),
                    a.cols()
                )));
            }
            if coeffs.insert(j, a).is_some() {
                return Err(Error::InvalidInput(format!("duplicate coefficient {j}")));
            }
        }
        if coeffs.values().all(|a| a.max_abs() == 0.0) {
            return Err(Error::InvalidInput("symbol is identically zero".into()));
        }
        Ok(Self { block, coeffs })
    }

    /// Scalar symbol from `(power, coefficient)` pairs.
    pub fn scalar(terms: &[(i32, Complex64)]) -> Result<Self> {
        Self::new(
            terms
                .iter()
                .map(|&(j, a)| (j, ComplexMatrix::from_diagonal(&[a])))
                .collect(),
        )
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    /// `d = max |j|` over stored coefficients.
    pub fn bandwidth(&self) -> usize {
        self.coeffs.keys().map(|j| j.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn coefficient(&self, j: i32) -> Option<&ComplexMatrix> {
        self.coeffs.get(&j)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i32, &ComplexMatrix)> {
        self.coeffs.iter().map(|(&j, a)| (j, a))
    }

    /// `A_{−j} = A_j*` for all `j`, so that `A(z)` is Hermitian on `|z| = 1`.
    pub fn is_hermitian_symmetric(&self, tol: f64) -> bool {
        let zero = ComplexMatrix::zeros(self.block, self.block);
        let scale = self.coeffs.values().map(|a| a.max_abs()).fold(0.0, f64::max);
        self.coeffs.iter().all(|(&j, a)| {
            let partner = self.coeffs.get(&-j).unwrap_or(&zero);
            (a - &partner.adjoint()).max_abs() <= tol * scale
        })
    }

    /// `Σ_j |j|·‖A_j‖_F`, a Lipschitz constant of `θ ↦ A(e^{iθ})`.
    pub fn lipschitz_bound(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&j, a)| j.unsigned_abs() as f64 * a.frobenius_norm())
            .sum()
    }

    pub fn eval(&self, z: Complex64) -> Result<ComplexMatrix> {
        if z.norm() == 0.0 {
            return Err(Error::InvalidInput("symbol evaluated at z = 0".into()));
        }
        let mut out = ComplexMatrix::zeros(self.block, self.block);
        for (&j, a) in &self.coeffs {
            out = &out + &a.scale(z.powi(j));
        }
        Ok(out)
    }

    /// Block-diagonal sum of two symbols.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let za = ComplexMatrix::zeros(self.block, self.block);
        let zb = ComplexMatrix::zeros(other.block, other.block);
        let mut keys: Vec<i32> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let blocks = keys
            .into_iter()
            .map(|j| {
                let a = self.coeffs.get(&j).unwrap_or(&za);
                let b = other.coeffs.get(&j).unwrap_or(&zb);
                (j, a.direct_sum(b))
            })
            .collect();
        Self::new(blocks).expect("sum of valid symbols")
    }
}

/// `A(z)` for a symbol; fails at `z = 0`.
pub fn symbol_eval(s: &LaurentSymbol, z: Complex64) -> Result<ComplexMatrix> {
    s.eval(z)
}
