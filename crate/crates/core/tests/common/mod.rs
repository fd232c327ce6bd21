//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Deserialize;

use spectral_core::{Complex64, ComplexMatrix};

#[derive(Debug, Deserialize)]
pub struct Fixtures {
    pub beta: Vec<BetaCase>,
    pub rohlin: Vec<RohlinCase>,
    pub alpha: Vec<AlphaCase>,
    pub form: Vec<FormCase>,
    pub w_cs: Vec<WcsCase>,
}

#[derive(Debug, Deserialize)]
pub struct BetaCase {
    #[serde(default)]
    pub label: String,
    pub rho: String,
    pub sig_v: i64,
    pub residue: String,
}

#[derive(Debug, Deserialize)]
pub struct RohlinCase {
    #[serde(default)]
    pub label: String,
    pub sig_w: i64,
    pub residue: String,
}

#[derive(Debug, Deserialize)]
pub struct AlphaCase {
    #[serde(default)]
    pub label: String,
    pub n: u32,
    pub sign: i64,
    pub value: i64,
}

#[derive(Debug, Deserialize)]
pub struct FormCase {
    pub spec: String,
    pub rank: usize,
    pub signature: i64,
}

#[derive(Debug, Deserialize)]
pub struct WcsCase {
    pub ind_plus: i64,
    pub sig_w: i64,
    pub sig_v: i64,
    pub value: String,
}

pub fn fixtures() -> Fixtures {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/worked_examples.toml");
    let text = std::fs::read_to_string(&path).expect("fixture file");
    toml::from_str(&text).expect("fixture schema")
}

pub fn rational(s: &str) -> BigRational {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    BigRational::new(p.trim().parse::<BigInt>().unwrap(), q.trim().parse::<BigInt>().unwrap())
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let h = &a + &a.adjoint();
    h.scale(Complex64::new(0.5, 0.0))
}

/// Product of `k` Householder reflections `I − 2vv*/‖v‖²`.
pub fn householder_unitary<R: Rng>(rng: &mut R, n: usize, k: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(n);
    for _ in 0..k {
        let v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let h = ComplexMatrix::from_fn(n, n, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            Complex64::new(delta, 0.0) - v[i] * v[j].conj() * (2.0 / norm2)
        });
        u = &u * &h;
    }
    u
}

/// Gauss–Jordan inverse with partial pivoting; `None` when singular.
pub fn gauss_jordan_inverse(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Complex64> = (0..n).map(|j| m[(i, j)]).collect();
            row.extend((0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(ComplexMatrix::from_fn(n, n, |i, j| a[i][n + j]))
}

/// Spectral norm by power iteration on `M*M`.
pub fn spectral_norm(m: &ComplexMatrix, iters: usize) -> f64 {
    let mtm = &m.adjoint() * m;
    let n = mtm.rows();
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64 * 0.01, 0.3)).collect();
    let mut lambda = 0.0;
    for _ in 0..iters {
        let w = mtm.matvec(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w.into_iter().map(|z| z / norm).collect();
    }
    lambda.sqrt()
}
