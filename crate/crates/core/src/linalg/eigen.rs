//! Hermitian eigensolvers: cyclic Jacobi, and a tridiagonal QL path for
//! eigenvalues only.

use num_complex::Complex64;

use super::tridiag::{tridiagonal_ql, tridiagonalize};
use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Row stride of the working array, padded so that column walks do not
/// alias in cache when `n` is a power of two.
fn ld(n: usize) -> usize {
    n + 3
}

/// Sorted eigenvalues of a Hermitian matrix together with the achieved
/// residual `max_i ‖M v_i − λ_i v_i‖ / ‖M‖₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigResult {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
}

/// Eigenvalues plus unit eigenvectors (column `i` belongs to `eigenvalues[i]`).
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub residual: f64,
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let allowed = tol * m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > allowed {
        return Err(Error::NotHermitian { defect, allowed });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Fails when `M` is not square, when `‖M − M*‖_F > tol·‖M‖_F`, or when the
/// residual exceeds `tol`. The values come from Householder reduction to
/// tridiagonal form followed by implicit QL; the residual reported is the
/// largest coupling dropped at deflation relative to `max |λ|`.
/// [`hermitian_eigen`] runs the Jacobi iteration and also returns vectors.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<EigResult> {
    check_hermitian(m, tol)?;
    let (d, e) = tridiagonalize(m);
    let (mut eigenvalues, dropped) = tridiagonal_ql(d, e)?;
    eigenvalues.sort_by(f64::total_cmp);
    let residual = dropped / scale_of(&eigenvalues);
    if residual > tol {
        return Err(Error::Convergence { residual, tol });
    }
    Ok(EigResult { eigenvalues, residual })
}

/// Eigenvalues by cyclic Jacobi alone, without vectors. The residual is the
/// Frobenius norm of the remaining off-diagonal part relative to `max |λ|`.
pub fn jacobi_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<EigResult> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let mut a = hermitian_part(m);
    jacobi_sweeps(&mut a, None, n);
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * ld(n) + i].re).collect();
    eigenvalues.sort_by(f64::total_cmp);
    let off = off_diagonal_norm_sqr(&a, n).sqrt();
    let residual = off / scale_of(&eigenvalues);
    if residual > tol {
        return Err(Error::Convergence { residual, tol });
    }
    Ok(EigResult { eigenvalues, residual })
}

fn hermitian_part(m: &ComplexMatrix) -> Vec<Complex64> {
    // Work on the Hermitian part so that a tolerated defect does not bias
    // the rotations.
    let n = m.rows();
    let mut a = vec![Complex64::new(0.0, 0.0); n * ld(n)];
    for i in 0..n {
        for j in 0..n {
            a[i * ld(n) + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    a
}

fn scale_of(eigenvalues: &[f64]) -> f64 {
    let norm = eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if norm > f64::MIN_POSITIVE {
        norm
    } else {
        1.0
    }
}

fn off_diagonal_norm_sqr(a: &[Complex64], n: usize) -> f64 {
    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += a[p * ld(n) + q].norm_sqr();
        }
    }
    2.0 * off
}

pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<EigDecomposition> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let mut a = hermitian_part(m);
    // vt holds the eigenvectors as rows.
    let mut vt = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        vt[i * n + i] = Complex64::new(1.0, 0.0);
    }

    jacobi_sweeps(&mut a, Some(&mut vt), n);

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * ld(n) + i].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |row, col| vt[order[col] * n + row]);

    let scale = scale_of(&eigenvalues);
    let mut residual: f64 = 0.0;
    for (col, &lambda) in eigenvalues.iter().enumerate() {
        let v: Vec<Complex64> = (0..n).map(|r| vectors[(r, col)]).collect();
        let mv = m.matvec(&v);
        let r = mv
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r / scale);
    }
    if residual > tol {
        return Err(Error::Convergence { residual, tol });
    }
    Ok(EigDecomposition {
        eigenvalues,
        vectors,
        residual,
    })
}

fn jacobi_sweeps(a: &mut [Complex64], mut vt: Option<&mut [Complex64]>, n: usize) {
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm_sqr(a, n);
        if off == 0.0 {
            return;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * ld(n) + q];
                let beta = apq.norm();
                if beta == 0.0 {
                    continue;
                }
                let alpha = a[p * ld(n) + p].re;
                let gamma = a[q * ld(n) + q].re;
                let g = 100.0 * beta;
                if sweep > 3 && alpha.abs() + g == alpha.abs() && gamma.abs() + g == gamma.abs() {
                    a[p * ld(n) + q] = Complex64::new(0.0, 0.0);
                    a[q * ld(n) + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotate(a, vt.as_deref_mut(), n, p, q, alpha, gamma, apq, beta);
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut [Complex64],
    vt: Option<&mut [Complex64]>,
    n: usize,
    p: usize,
    q: usize,
    alpha: f64,
    gamma: f64,
    apq: Complex64,
    beta: f64,
) {
    // a_pq = β e^{iφ}; J = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
    let e = apq / beta;
    let theta = 0.5 * (gamma - alpha) / beta;
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let se = e * s;
    let ce = e * c;

    let w = ld(n);
    let (rp, rq) = (p * w, q * w);
    {
        let (head, tail) = a.split_at_mut(rq);
        let row_p = &mut head[rp..rp + n];
        let row_q = &mut tail[..n];
        for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
            let (x0, y0) = (*x, *y);
            *x = x0 * c - se * y0;
            *y = x0 * s + ce * y0;
        }
    }
    for k in 0..n {
        a[k * w + p] = a[rp + k].conj();
        a[k * w + q] = a[rq + k].conj();
    }
    a[rp + p] = Complex64::new(alpha - t * beta, 0.0);
    a[rq + q] = Complex64::new(gamma + t * beta, 0.0);
    a[rp + q] = Complex64::new(0.0, 0.0);
    a[rq + p] = Complex64::new(0.0, 0.0);

    let Some(vt) = vt else { return };
    let ec = e.conj();
    for k in 0..n {
        let x = vt[p * n + k];
        let y = vt[q * n + k];
        vt[p * n + k] = x * c - ec * y * s;
        vt[q * n + k] = x * s + ec * y * c;
    }
}
