//! Dense row-major complex matrices.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{real, to_f64, Scalar};

/// Errors raised by matrix construction and the Hermitian eigenvalue path.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("matrix dimensions must be positive")]
    ZeroDimension,
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |m - m^†| entry = {deviation:e}")]
    NotHermitian { deviation: f64 },
}

/// Absolute entrywise tolerance for approximate matrix comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T: Scalar> {
    abs_eps: T,
}

impl<T: Scalar> Tolerance<T> {
    /// Requires `abs_eps > 0`.
    pub fn new(abs_eps: T) -> Self {
        assert!(abs_eps > T::zero(), "tolerance must be positive");
        Self { abs_eps }
    }

    pub fn abs_eps(&self) -> T {
        self.abs_eps
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self::new(real(1e-10))
    }
}

/// Dense complex matrix with row-major storage. Entries are kept finite:
/// the fallible constructors reject NaN/Inf at the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        for (k, e) in entries.iter().enumerate() {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(LinalgError::NonFiniteEntry {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix entry by entry. Panics on non-finite values; use
    /// [`ComplexMatrix::new`] when the entries come from outside the crate.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert!(
                    e.re.is_finite() && e.im.is_finite(),
                    "non-finite entry at ({r}, {c})"
                );
                entries.push(e);
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex::zero())
    }

    pub fn identity(d: usize) -> Self {
        Self::from_fn(d, d, |r, c| {
            if r == c {
                Complex::from(T::one())
            } else {
                Complex::zero()
            }
        })
    }

    /// Convenience constructor from real-valued rows (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[T]]) -> Self {
        let nrows = rows.len();
        assert!(nrows > 0 && !rows[0].is_empty());
        let ncols = rows[0].len();
        Self::from_fn(nrows, ncols, |r, c| {
            assert_eq!(rows[r].len(), ncols, "ragged rows");
            Complex::from(rows[r][c])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)] * factor)
    }

    pub fn scale_re(&self, factor: T) -> Self {
        self.scale(Complex::from(factor))
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Kronecker product: entry `((i*b.rows + k), (j*b.cols + l)) = a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, e| acc.max(e.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm()))
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.max_abs_diff(other) <= tol.abs_eps()
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, e| acc + e.norm_sqr())
            .sqrt()
    }

    /// Max entry of `|m - m^†|`; zero for exactly Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> T {
        assert!(self.is_square(), "hermiticity requires a square matrix");
        let mut dev = T::zero();
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: &Tolerance<T>) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol.abs_eps()
    }

    pub(crate) fn require_square(&self) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_hermitian(&self, tol: &Tolerance<T>) -> Result<(), LinalgError> {
        self.require_square()?;
        let dev = self.hermiticity_deviation();
        if dev > tol.abs_eps() {
            return Err(LinalgError::NotHermitian {
                deviation: to_f64(dev),
            });
        }
        Ok(())
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        debug_assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl<T: Scalar> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + rhs[(r, c)])
    }
}

impl<T: Scalar> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - rhs[(r, c)])
    }
}

impl<T: Scalar> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        ComplexMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(Complex::zero(), |acc, k| acc + self[(r, k)] * rhs[(k, c)])
        })
    }
}
