//! Exact inertia of symmetric rational forms via pivoted LDLᵀ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts of positive, negative and zero eigenvalues of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn dimension(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

/// Inertia of an exact symmetric rational matrix.
///
/// Eliminates with the largest-magnitude diagonal pivot; when every
/// remaining diagonal entry vanishes but the block does not, a 2×2 pivot
/// `[[0, b], [b, 0]]` (one positive and one negative direction) is used.
/// Sylvester's law of inertia makes the pivot signs the answer.
pub fn rational_ldl_inertia(s: &[Vec<BigRational>]) -> Result<Inertia> {
    let n = s.len();
    if s.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: s.first().map_or(0, Vec::len),
        });
    }
    for i in 0..n {
        for j in 0..i {
            if s[i][j] != s[j][i] {
                return Err(Error::Contract(format!(
                    "form is not symmetric at ({i}, {j})"
                )));
            }
        }
    }

    let mut a: Vec<Vec<BigRational>> = s.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };

    while !active.is_empty() {
        let diag_pivot = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .max_by(|&i, &j| a[i][i].abs().cmp(&a[j][j].abs()));

        if let Some(p) = diag_pivot {
            let d = a[p][p].clone();
            if d.is_positive() {
                inertia.n_plus += 1;
            } else {
                inertia.n_minus += 1;
            }
            active.retain(|&i| i != p);
            let col: Vec<BigRational> = active.iter().map(|&j| a[j][p].clone()).collect();
            for (x, &j) in active.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                let f = &col[x] / &d;
                for (y, &k) in active.iter().enumerate() {
                    if !col[y].is_zero() {
                        let delta = &f * &col[y];
                        a[j][k] -= delta;
                    }
                }
            }
            continue;
        }

        let mut block: Option<(usize, usize)> = None;
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if !a[i][j].is_zero()
                    && block.map_or(true, |(p, q)| a[i][j].abs() > a[p][q].abs())
                {
                    block = Some((i, j));
                }
            }
        }
        let Some((p, q)) = block else {
            inertia.n_zero += active.len();
            break;
        };
        inertia.n_plus += 1;
        inertia.n_minus += 1;
        let b = a[p][q].clone();
        active.retain(|&i| i != p && i != q);
        let cp: Vec<BigRational> = active.iter().map(|&j| a[j][p].clone()).collect();
        let cq: Vec<BigRational> = active.iter().map(|&j| a[j][q].clone()).collect();
        for (x, &j) in active.iter().enumerate() {
            for (y, &k) in active.iter().enumerate() {
                let num = &cq[x] * &cp[y] + &cp[x] * &cq[y];
                if !num.is_zero() {
                    a[j][k] -= num / &b;
                }
            }
        }
    }
    Ok(inertia)
}

/// Convenience wrapper for integer forms.
pub fn integer_inertia(s: &[Vec<i64>]) -> Result<Inertia> {
    let q: Vec<Vec<BigRational>> = s
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    rational_ldl_inertia(&q)
}
