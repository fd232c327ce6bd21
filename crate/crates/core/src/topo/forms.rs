//! Integral intersection forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integer_inertia, Inertia};

/// Symmetric integer matrix with its exact inertia.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionForm {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
    pub rank: usize,
    pub signature: i64,
    pub inertia: Inertia,
}

/// E8 Cartan matrix: chain 0–1–2–3–4–5–6 with node 7 attached to node 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

impl IntersectionForm {
    pub fn new(name: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let inertia = integer_inertia(&matrix)?;
        Ok(Self {
            name: name.into(),
            rank: matrix.len(),
            signature: inertia.signature(),
            inertia,
            matrix,
        })
    }

    pub fn e8() -> Self {
        let mut m = vec![vec![0i64; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in E8_EDGES {
            m[a][b] = -1;
            m[b][a] = -1;
        }
        Self::new("E8", m).expect("E8 is symmetric")
    }

    pub fn hyperbolic() -> Self {
        Self::new("H", vec![vec![0, 1], vec![1, 0]]).expect("H is symmetric")
    }

    /// `2(−E8) ⊕ 3H`, signature −16.
    pub fn k3() -> Self {
        let m = Self::e8().negate();
        let h = Self::hyperbolic();
        let mut k = m.direct_sum(&m).direct_sum(&h).direct_sum(&h).direct_sum(&h);
        k.name = "K3".into();
        k
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("Diag needs at least one entry".into()));
        }
        let n = entries.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect();
        let label = entries.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        Self::new(format!("Diag({label})"), m)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.rank + other.rank;
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..self.rank {
            m[i][..self.rank].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..other.rank {
            m[self.rank + i][self.rank..].copy_from_slice(&other.matrix[i]);
        }
        let inertia = Inertia {
            n_plus: self.inertia.n_plus + other.inertia.n_plus,
            n_minus: self.inertia.n_minus + other.inertia.n_minus,
            n_zero: self.inertia.n_zero + other.inertia.n_zero,
        };
        Self {
            name: format!("{}+{}", self.name, other.name),
            matrix: m,
            rank: n,
            signature: inertia.signature(),
            inertia,
        }
    }

    /// Orientation reversal.
    pub fn negate(&self) -> Self {
        Self {
            name: format!("-{}", self.name),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
            rank: self.rank,
            signature: -self.signature,
            inertia: Inertia {
                n_plus: self.inertia.n_minus,
                n_minus: self.inertia.n_plus,
                n_zero: self.inertia.n_zero,
            },
        }
    }

    /// Even forms have only even diagonal entries.
    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.matrix[i][i] % 2 == 0)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rank;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        d == BigInt::one() || d == -BigInt::one()
    }
}

/// Named forms: `E8`, `H`, `K3`, `Diag(a,b,...)`.
pub fn builtin_form(name: &str) -> Result<IntersectionForm> {
    let trimmed = name.trim();
    match trimmed.to_ascii_uppercase().as_str() {
        "E8" => return Ok(IntersectionForm::e8()),
        "H" => return Ok(IntersectionForm::hyperbolic()),
        "K3" => return Ok(IntersectionForm::k3()),
        _ => {}
    }
    let lower = trimmed.to_ascii_lowercase();
    if let Some(inner) = lower.strip_prefix("diag(").and_then(|s| s.strip_suffix(')')) {
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad Diag entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return IntersectionForm::diagonal(&entries);
    }
    Err(Error::InvalidInput(format!("unknown form `{trimmed}`")))
}

pub fn direct_sum(a: &IntersectionForm, b: &IntersectionForm) -> IntersectionForm {
    a.direct_sum(b)
}

pub fn negate(a: &IntersectionForm) -> IntersectionForm {
    a.negate()
}

/// Parses sums such as `-E8+E8+3H` or `2E8+Diag(1,-1)`: terms joined by
/// `+`, each with an optional `-` and an optional multiplicity.
pub fn parse_form_sum(spec: &str) -> Result<IntersectionForm> {
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in spec.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if ch == '+' && depth == 0 {
            terms.push(std::mem::take(&mut current));
        } else if !ch.is_whitespace() {
            current.push(ch);
        }
    }
    terms.push(current);

    let mut acc: Option<IntersectionForm> = None;
    for term in terms {
        if term.is_empty() {
            return Err(Error::InvalidInput(format!("empty term in `{spec}`")));
        }
        let (negative, rest) = match term.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, term.as_str()),
        };
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let count = if digits.is_empty() {
            1
        } else {
            digits
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad multiplicity in `{term}`")))?
        };
        if count == 0 {
            return Err(Error::InvalidInput(format!("zero multiplicity in `{term}`")));
        }
        let mut form = builtin_form(&rest[digits.len()..])?;
        if negative {
            form = form.negate();
        }
        for _ in 0..count {
            acc = Some(match acc {
                Some(a) => a.direct_sum(&form),
                None => form.clone(),
            });
        }
    }
    let mut out = acc.expect("at least one term");
    out.name = spec.trim().to_string();
    Ok(out)
}
