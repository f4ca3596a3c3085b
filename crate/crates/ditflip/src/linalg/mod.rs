//! Dense complex linear algebra: products, adjoints, Kronecker products,
//! Hermitian eigenvalues, trace norm.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigenvalues, trace_norm};
pub use matrix::{ComplexMatrix, LinalgError, Tolerance};
