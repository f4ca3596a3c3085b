//! Density matrices and the pure / maximally entangled / Werner builders.

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, LinalgError, Tolerance};
use crate::scalar::{real, scaled_tol, to_f64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Subsystem structure of a state: a single qudit or an ordered bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemDims {
    Single(usize),
    /// `(d_A, d_B)`; the composite index convention is `|ij> -> i*d_B + j`.
    Bipartite(usize, usize),
}

impl SystemDims {
    pub fn total(&self) -> usize {
        match *self {
            SystemDims::Single(d) => d,
            SystemDims::Bipartite(a, b) => a * b,
        }
    }

    pub fn bipartite(&self) -> Option<(usize, usize)> {
        match *self {
            SystemDims::Single(_) => None,
            SystemDims::Bipartite(a, b) => Some((a, b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("state vector norm {norm} is not 1")]
    NotNormalized { norm: f64 },
    #[error("matrix dimension {matrix} does not match subsystem product {dims}")]
    DimensionMismatch { matrix: usize, dims: usize },
    #[error("not Hermitian: max |m - m^†| entry = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("trace {trace} is not 1")]
    TraceNotOne { trace: f64 },
    #[error("not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("subsystem dimensions must be at least 2")]
    DimensionTooSmall,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Hermitian, unit-trace, positive-semidefinite matrix with subsystem
/// metadata. Validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Scalar> {
    matrix: ComplexMatrix<T>,
    dims: SystemDims,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Checks Hermiticity and trace within 1e-10 and min eigenvalue >= -1e-10
    /// (widened for low-precision scalars).
    pub fn new(matrix: ComplexMatrix<T>, dims: SystemDims) -> Result<Self, StateError> {
        let d = matrix.require_square()?;
        if d != dims.total() {
            return Err(StateError::DimensionMismatch {
                matrix: d,
                dims: dims.total(),
            });
        }
        let tol: T = scaled_tol(1e-10, 256.0);
        let herm_dev = matrix.hermiticity_deviation();
        if herm_dev > tol {
            return Err(StateError::NotHermitian {
                deviation: to_f64(herm_dev),
            });
        }
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > tol || trace.im.abs() > tol {
            return Err(StateError::TraceNotOne {
                trace: to_f64(trace.re),
            });
        }
        let eigs = hermitian_eigenvalues(&matrix, &Tolerance::new(tol))?;
        let min_eig = eigs[0];
        if min_eig < -tol {
            return Err(StateError::NotPositive {
                min_eigenvalue: to_f64(min_eig),
            });
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dims(&self) -> SystemDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

pub(crate) fn vector_norm<T: Scalar>(psi: &[Complex<T>]) -> T {
    psi.iter()
        .fold(T::zero(), |acc, e| acc + e.norm_sqr())
        .sqrt()
}

/// Projector `|psi><psi|` as a density matrix.
pub fn pure_density<T: Scalar>(
    psi: &[Complex<T>],
    dims: SystemDims,
) -> Result<DensityMatrix<T>, StateError> {
    let norm = vector_norm(psi);
    if (norm - T::one()).abs() > scaled_tol(1e-12, 16.0) {
        return Err(StateError::NotNormalized { norm: to_f64(norm) });
    }
    if psi.len() != dims.total() {
        return Err(StateError::DimensionMismatch {
            matrix: psi.len(),
            dims: dims.total(),
        });
    }
    let matrix = ComplexMatrix::from_fn(psi.len(), psi.len(), |r, c| psi[r] * psi[c].conj());
    DensityMatrix::new(matrix, dims)
}

/// Maximally entangled vector `(1/sqrt(m)) sum_{i<m} |ii>` with
/// `m = min(d_a, d_b)`.
pub fn phi_plus<T: Scalar>(d_a: usize, d_b: usize) -> Vec<Complex<T>> {
    assert!(d_a >= 2 && d_b >= 2, "subsystems need at least two levels");
    let m = d_a.min(d_b);
    let amp = Complex::from(T::one() / real::<T>(m as f64).sqrt());
    let mut psi = vec![Complex::zero(); d_a * d_b];
    for i in 0..m {
        psi[i * d_b + i] = amp;
    }
    psi
}

/// Werner-state recipe: dimensions, mixing parameter, and the maximally
/// entangled vector being mixed with white noise.
#[derive(Debug, Clone, PartialEq)]
pub struct WernerSpec<T: Scalar> {
    d_a: usize,
    d_b: usize,
    a: T,
    psi: Vec<Complex<T>>,
}

impl<T: Scalar> WernerSpec<T> {
    /// Standard spec with `psi = phi_plus(d_a, d_b)`.
    pub fn new(d_a: usize, d_b: usize, a: T) -> Result<Self, StateError> {
        if d_a < 2 || d_b < 2 {
            return Err(StateError::DimensionTooSmall);
        }
        Self::with_psi(d_a, d_b, a, phi_plus(d_a, d_b))
    }

    /// Any normalized vector may stand in for the maximally entangled state.
    pub fn with_psi(
        d_a: usize,
        d_b: usize,
        a: T,
        psi: Vec<Complex<T>>,
    ) -> Result<Self, StateError> {
        if d_a < 2 || d_b < 2 {
            return Err(StateError::DimensionTooSmall);
        }
        if a < T::zero() || a > T::one() {
            return Err(StateError::ParameterOutOfRange {
                name: "a",
                value: to_f64(a),
            });
        }
        if psi.len() != d_a * d_b {
            return Err(StateError::DimensionMismatch {
                matrix: psi.len(),
                dims: d_a * d_b,
            });
        }
        let norm = vector_norm(&psi);
        if (norm - T::one()).abs() > scaled_tol(1e-12, 16.0) {
            return Err(StateError::NotNormalized { norm: to_f64(norm) });
        }
        Ok(Self { d_a, d_b, a, psi })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn mixing(&self) -> T {
        self.a
    }

    pub fn psi(&self) -> &[Complex<T>] {
        &self.psi
    }
}

/// `a |psi><psi| + (1-a)/(d_A d_B) * identity`.
pub fn werner<T: Scalar>(spec: &WernerSpec<T>) -> Result<DensityMatrix<T>, StateError> {
    let n = spec.d_a * spec.d_b;
    let a = spec.a;
    let background = (T::one() - a) / real::<T>(n as f64);
    let matrix = ComplexMatrix::from_fn(n, n, |r, c| {
        let pure = spec.psi[r] * spec.psi[c].conj() * Complex::from(a);
        if r == c {
            pure + Complex::from(background)
        } else {
            pure
        }
    });
    DensityMatrix::new(matrix, SystemDims::Bipartite(spec.d_a, spec.d_b))
}
