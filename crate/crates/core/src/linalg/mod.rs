//! Dense complex linear algebra and exact symmetric-form arithmetic.

mod eigen;
mod matrix;
mod rational;
mod svd;
mod tridiag;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, jacobi_eigenvalues, EigDecomposition, EigResult};
pub use matrix::ComplexMatrix;
pub use rational::{integer_inertia, rational_ldl_inertia, Inertia};
pub use svd::{numeric_kernel_dim, singular_values, svd, SvdTriple};
