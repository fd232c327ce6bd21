//! Twisted Dirac spectra on model spin manifolds, Floquet/Laurent symbol
//! analysis of periodic lattice operators, and exact arithmetic for the
//! spin 4-manifold invariants built from signatures.
//!
//! Module map:
//!
//! - [`linalg`]: Jacobi eigensolver, SVD, numerical kernels, exact inertia.
//! - [`spectra`]: closed-form circle/sphere/product spectra and the twist
//!   periodicity, gauge invariance and Lichnerowicz checks.
//! - [`discretize`]: discrete circle Dirac operators, gauge conjugation,
//!   the Fourier–Laplace family and finite sections of the cover operator.
//! - [`floquet`]: Laurent symbols, unit-circle Fredholm scans, Toeplitz
//!   index, finite sections and spectral flow.
//! - [`topo`]: intersection forms, Rohlin, α, w, β and w_cs.

pub mod constants;
pub mod discretize;
pub mod error;
pub mod floquet;
pub mod linalg;
pub mod spectra;
pub mod topo;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigResult, Inertia};
pub use spectra::{SpectrumSample, SpinStructure};
pub use floquet::{FredholmReport, LaurentSymbol, SpectralFlowResult};
pub use topo::{IntersectionForm, Mod2Rational};
pub use num_complex::Complex64;
