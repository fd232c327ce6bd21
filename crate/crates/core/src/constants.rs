//! Conventions and default tolerances shared by every module.
//!
//! Sign conventions that the underlying mathematics leaves open are fixed
//! here once; tests and reports reference these constants instead of
//! restating them.

/// Sign `s` with which the twist term enters the circle spectrum:
/// Clifford multiplication by `dθ` acts as `+i`, so `i c dθ` acts as the
/// real scalar `s·c = -c` and the bounding spectrum is `{k + 1/2 - c}`.
pub const CLIFFORD_SIGN: f64 = -1.0;

/// Default relative tolerance for numerical contracts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute tolerance for merging numerically equal eigenvalues.
pub const GROUPING_TOL: f64 = 1e-7;

/// Absolute threshold on the minimal singular value over `|z| = 1`.
pub const FREDHOLM_TOL: f64 = 1e-6;

/// Default number of uniform grid points for unit-circle scans.
pub const CIRCLE_GRID: usize = 512;

/// Golden-section refinement tolerance in the angle.
pub const REFINE_TOL: f64 = 1e-8;

/// Default grid size for discrete circle operators.
pub const DEFAULT_GRID: usize = 64;

/// Number of eigenvalues dropped on each side of a truncated spectrum
/// before comparing two samples.
pub const EDGE_EXCLUSION: usize = 2;

pub const CLIFFORD_CONVENTION: &str =
    "Clifford(dθ) = +i on the circle spinor bundle; i c dθ acts as -c; bounding spectrum {k + 1/2 - c}";

pub const INDEX_CONVENTION: &str =
    "half-line (Toeplitz) index = -winding(det A(z)) counterclockwise on |z| = 1; Laurent operator index = 0";

pub const LN_BRANCH_CONVENTION: &str =
    "z^f = exp(f · ln z) with ln z = ln|z| + i·arg z, arg in (-π, π] unless a branch is passed explicitly; twist c <-> z = exp(-2πic), ln z = -2πic";

pub const SYMBOL_CONVENTION: &str =
    "A(z) = Σ_j A_j z^j; finite section block (i, k) = A_{i-k}; D_z ≅ A(z) for quasi-periodic data τ*Ψ = z^{-1}Ψ";

/// Tolerance used where callers do not pass one: `SPECTRAL_TOL` from the
/// environment when it parses as a positive float, [`DEFAULT_TOL`] otherwise.
pub fn default_tol() -> f64 {
    std::env::var("SPECTRAL_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}
