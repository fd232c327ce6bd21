use nalgebra::SVD;

use super::ComplexMatrix;

/// Singular values, sorted descending; `min(rows, cols)` of them.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.as_nalgebra().clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Thin SVD `M = U Σ V*` with singular values sorted descending.
#[derive(Debug, Clone)]
pub struct SvdTriple {
    pub values: Vec<f64>,
    /// Left singular vectors as columns.
    pub u: ComplexMatrix,
    /// Right singular vectors as columns.
    pub v: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> SvdTriple {
    let dec = SVD::new(m.as_nalgebra().clone(), true, true);
    let u = dec.u.expect("requested U");
    let v = dec.v_t.expect("requested V*").adjoint();
    let mut order: Vec<usize> = (0..dec.singular_values.len()).collect();
    order.sort_by(|&i, &j| dec.singular_values[j].total_cmp(&dec.singular_values[i]));
    let values = order.iter().map(|&i| dec.singular_values[i]).collect();
    let u = ComplexMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v = ComplexMatrix::from_fn(v.nrows(), order.len(), |r, c| v[(r, order[c])]);
    SvdTriple { values, u, v }
}

/// Number of singular values below `tol · σ_max` (with `σ_max` replaced
/// by 1 when every singular value is zero). Square matrices only count
/// their own dimension; rectangular ones also count the missing
/// `cols − rows` directions of a wide matrix as kernel.
pub fn numeric_kernel_dim(m: &ComplexMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let scale = if smax > 0.0 { smax } else { 1.0 };
    let small = s.iter().filter(|&&x| x < tol * scale).count();
    small + m.cols().saturating_sub(m.rows())
}
