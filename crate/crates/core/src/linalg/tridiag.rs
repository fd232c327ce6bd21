//! Eigenvalues through Householder tridiagonalization and implicit QL.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Reduces the Hermitian part of `m` to a real symmetric tridiagonal
/// matrix with the same eigenvalues. Returns `(diagonal, |subdiagonal|)`.
pub(crate) fn tridiagonalize(m: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| (m[(i, j)] + m[(j, i)].conj()) * 0.5).collect())
        .collect();
    let mut off = vec![0.0; n];
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[i][k]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        let mut v = x;
        v[0] -= alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            off[k] = norm;
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // Trailing block B ← B − 2 v w* − 2 w v*, w = Bv − (v*Bv) v.
        let r = n - k - 1;
        let mut p = vec![zero; r];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a[k + 1 + i][k + 1..];
            *pi = row.iter().zip(&v).map(|(b, vj)| b * vj).sum();
        }
        let kappa: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kappa.re).collect();
        for i in 0..r {
            let row = &mut a[k + 1 + i];
            for j in 0..r {
                row[k + 1 + j] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }
        a[k + 1][k] = alpha;
        a[k][k + 1] = alpha.conj();
        for i in k + 2..n {
            a[i][k] = zero;
            a[k][i] = zero;
        }
        off[k] = norm;
    }
    if n >= 2 {
        off[n - 2] = a[n - 1][n - 2].norm();
    }
    let diag = (0..n).map(|i| a[i][i].re).collect();
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix (`d`, `e`), where `e[i]`
/// couples `i` and `i + 1`. Returns them unsorted together with the largest
/// coupling dropped at deflation.
pub(crate) fn tridiagonal_ql(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, f64)> {
    let n = d.len();
    e.resize(n, 0.0);
    let mut dropped: f64 = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    dropped = dropped.max(e[m].abs());
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Convergence {
                    residual: e[l].abs(),
                    tol: f64::EPSILON,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, dropped))
}
