//! Finite sections of the half-line (Toeplitz) compression.

use serde::{Deserialize, Serialize};

use super::LaurentSymbol;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, svd, ComplexMatrix};

/// `(nN)×(nN)` block Toeplitz matrix with block `(i, k) = A_{i−k}`.
pub fn finite_section(s: &LaurentSymbol, n: usize) -> Result<ComplexMatrix> {
    let d = s.bandwidth();
    if n < 2 * d + 1 {
        return Err(Error::InvalidInput(format!(
            "section of {n} periods is too small for bandwidth {d}"
        )));
    }
    Ok(truncate(s, n))
}

/// Block-banded truncation to `n` periods, with no size check.
pub(crate) fn truncate(s: &LaurentSymbol, n: usize) -> ComplexMatrix {
    let b = s.block_size();
    let mut out = ComplexMatrix::zeros(n * b, n * b);
    for (j, a) in s.coefficients() {
        for i in 0..n as i64 {
            let k = i - j as i64;
            if (0..n as i64).contains(&k) {
                out.set_block(i as usize * b, k as usize * b, a);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionVerdict {
    Stable,
    Decaying,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionEntry {
    pub periods: usize,
    pub sigma_min: f64,
    /// The `(N·d + 1)`-th smallest singular value, past the at most `N·d`
    /// exponentially small edge modes of a Fredholm section.
    pub sigma_bulk: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionsReport {
    pub entries: Vec<SectionEntry>,
    pub verdict: SectionVerdict,
    pub tol: f64,
}

impl SectionsReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == SectionVerdict::Stable
    }

    /// `bulk(first) / bulk(last)`.
    pub fn decay_ratio(&self) -> f64 {
        match (self.entries.first(), self.entries.last()) {
            (Some(a), Some(b)) => a.sigma_bulk / b.sigma_bulk,
            _ => 1.0,
        }
    }
}

/// Sweeps section sizes and classifies the bulk singular gap: `Stable`
/// when the last two values agree to 20% and exceed `tol`, `Decaying`
/// when the sequence is non-increasing and has at least halved.
pub fn fredholm_via_sections(s: &LaurentSymbol, sizes: &[usize], tol: f64) -> Result<SectionsReport> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("no section sizes".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("section sizes must be ascending".into()));
    }
    let edge = s.block_size() * s.bandwidth();
    let mut entries = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let sv = singular_values(&finite_section(s, n)?);
        let sigma_min = *sv.last().expect("nonempty");
        let sigma_bulk = sv[sv.len().saturating_sub(edge + 1)];
        entries.push(SectionEntry {
            periods: n,
            sigma_min,
            sigma_bulk,
        });
    }

    let bulk: Vec<f64> = entries.iter().map(|e| e.sigma_bulk).collect();
    let verdict = if bulk.len() >= 2 {
        let (a, b) = (bulk[bulk.len() - 2], bulk[bulk.len() - 1]);
        let monotone = bulk.windows(2).all(|w| w[1] <= w[0] * 1.01);
        if (a - b).abs() < 0.2 * a.max(b) && b > tol {
            SectionVerdict::Stable
        } else if monotone && bulk[bulk.len() - 1] < 0.5 * bulk[0] {
            SectionVerdict::Decaying
        } else {
            SectionVerdict::Inconclusive
        }
    } else if bulk[0] > tol {
        SectionVerdict::Inconclusive
    } else {
        SectionVerdict::Decaying
    };
    Ok(SectionsReport { entries, verdict, tol })
}

/// Kernel/cokernel counts of the half-line operator read off one section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionIndex {
    pub kernel: usize,
    pub cokernel: usize,
}

impl SectionIndex {
    pub fn index(&self) -> i64 {
        self.kernel as i64 - self.cokernel as i64
    }
}

/// Counts near-null singular vectors of the `n`-period section that live
/// at the half-line edge (the first half of the rows). Right singular
/// vectors there span the kernel, left ones the cokernel; vectors at the
/// far edge are truncation artefacts.
pub fn section_kernel_cokernel(s: &LaurentSymbol, n: usize, threshold: f64) -> Result<SectionIndex> {
    let t = finite_section(s, n)?;
    let dec = svd(&t);
    let smax = dec.values.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    let half = t.rows() / 2;
    let mut ker = 0.0;
    let mut coker = 0.0;
    for (k, &sigma) in dec.values.iter().enumerate() {
        if sigma >= threshold * smax {
            continue;
        }
        ker += (0..half).map(|r| dec.v[(r, k)].norm_sqr()).sum::<f64>();
        coker += (0..half).map(|r| dec.u[(r, k)].norm_sqr()).sum::<f64>();
    }
    Ok(SectionIndex {
        kernel: ker.round() as usize,
        cokernel: coker.round() as usize,
    })
}
