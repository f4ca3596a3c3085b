//! Single-qudit operators: pairwise flips, su(d) generators, cyclic shifts,
//! and basis permutations.
//!
//! Basis convention: computational basis vectors are the standard coordinate
//! vectors, and `|i><j|` has a single 1 at row `i`, column `j`.

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::ComplexMatrix;
use crate::scalar::{real, Scalar};

/// Cap on dimensions whose full d-cycle set gets enumerated ((d-1)! growth).
pub const MAX_CYCLE_DIM: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error("dimension {d} is too small, need at least 2")]
    DimensionTooSmall { d: usize },
    #[error("dimension {d} exceeds the cycle-enumeration cap {max}")]
    DimensionTooLarge { d: usize, max: usize },
    #[error("basis index {index} out of range for dimension {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("indices are equal ({index}); a flip needs two distinct levels")]
    EqualIndices { index: usize },
    #[error("map of length {len} is not a bijection on 0..{d}")]
    InvalidPermutation { d: usize, len: usize },
}

/// Bijection on `{0, .., d-1}`, stored as `map[i] = image of i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    d: usize,
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, OperatorError> {
        let d = map.len();
        let mut seen = vec![false; d];
        for &v in &map {
            if v >= d || seen[v] {
                return Err(OperatorError::InvalidPermutation { d, len: map.len() });
            }
            seen[v] = true;
        }
        Ok(Self { d, map })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Order of the permutation under composition.
    pub fn order(&self) -> usize {
        let mut current: Vec<usize> = (0..self.d).collect();
        for n in 1.. {
            current = current.iter().map(|&i| self.map[i]).collect();
            if current.iter().enumerate().all(|(i, &v)| i == v) {
                return n;
            }
        }
        unreachable!()
    }
}

fn check_pair(d: usize, i: usize, j: usize) -> Result<(), OperatorError> {
    if d < 2 {
        return Err(OperatorError::DimensionTooSmall { d });
    }
    for index in [i, j] {
        if index >= d {
            return Err(OperatorError::IndexOutOfRange { index, d });
        }
    }
    if i == j {
        return Err(OperatorError::EqualIndices { index: i });
    }
    Ok(())
}

/// Unitary, Hermitian, involutive flip `|i><j| + |j><i| + sum_{k != i,j} |k><k|`.
pub fn pairwise_flip_operator<T: Scalar>(
    d: usize,
    i: usize,
    j: usize,
) -> Result<ComplexMatrix<T>, OperatorError> {
    check_pair(d, i, j)?;
    let mut m = ComplexMatrix::identity(d);
    let one = Complex::from(T::one());
    m[(i, i)] = Complex::zero();
    m[(j, j)] = Complex::zero();
    m[(i, j)] = one;
    m[(j, i)] = one;
    Ok(m)
}

/// Rank-2 flip generator `Gamma_ij = |i><j| + |j><i|`.
pub fn gamma_operator<T: Scalar>(
    d: usize,
    i: usize,
    j: usize,
) -> Result<ComplexMatrix<T>, OperatorError> {
    check_pair(d, i, j)?;
    let mut m = ComplexMatrix::zeros(d, d);
    let one = Complex::from(T::one());
    m[(i, j)] = one;
    m[(j, i)] = one;
    Ok(m)
}

/// The d^2 - 1 generalized Gell-Mann generators of su(d).
///
/// For each new level j = 1..d the symmetric and antisymmetric pair operators
/// come first, then the diagonal traceless generator, which reproduces the
/// textbook su(2) and su(3) orderings exactly. All are traceless, Hermitian,
/// and normalized to `tr(g_a g_b) = 2 delta_ab`.
pub fn gellmann_matrices<T: Scalar>(d: usize) -> Result<Vec<ComplexMatrix<T>>, OperatorError> {
    if d < 2 {
        return Err(OperatorError::DimensionTooSmall { d });
    }
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 1..d {
        for i in 0..j {
            out.push(gamma_operator(d, i, j)?);
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(i, j)] = Complex::new(T::zero(), -T::one());
            anti[(j, i)] = Complex::new(T::zero(), T::one());
            out.push(anti);
        }
        // sqrt(2/(j(j+1))) * (|0><0| + .. + |j-1><j-1| - j|j><j|)
        let norm = real::<T>(2.0 / (j as f64 * (j as f64 + 1.0))).sqrt();
        let mut diag = ComplexMatrix::zeros(d, d);
        for k in 0..j {
            diag[(k, k)] = Complex::from(norm);
        }
        diag[(j, j)] = Complex::from(-norm * real::<T>(j as f64));
        out.push(diag);
    }
    Ok(out)
}

/// Successor shift `F_(d) |i> = |(i+1) mod d>`.
pub fn forward_operator<T: Scalar>(d: usize) -> Result<ComplexMatrix<T>, OperatorError> {
    cyclic_shift(d, 1)
}

/// Predecessor shift `B_(d) |i> = |(i-1) mod d>`.
pub fn backward_operator<T: Scalar>(d: usize) -> Result<ComplexMatrix<T>, OperatorError> {
    cyclic_shift(d, d - 1)
}

fn cyclic_shift<T: Scalar>(d: usize, step: usize) -> Result<ComplexMatrix<T>, OperatorError> {
    if d < 2 {
        return Err(OperatorError::DimensionTooSmall { d });
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        m[((i + step) % d, i)] = Complex::from(T::one());
    }
    Ok(m)
}

/// 0/1 unitary `sum_i |p(i)><i|`.
pub fn permutation_operator<T: Scalar>(p: &Permutation) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(p.dim(), p.dim());
    for i in 0..p.dim() {
        m[(p.image(i), i)] = Complex::from(T::one());
    }
    m
}

/// All (d-1)! single d-cycles on the basis, ordered lexicographically by the
/// cycle written starting at 0. For d = 3 this yields exactly the forward
/// shift followed by the backward shift.
pub fn enumerate_d_cycles(d: usize) -> Result<Vec<Permutation>, OperatorError> {
    if d < 2 {
        return Err(OperatorError::DimensionTooSmall { d });
    }
    if d > MAX_CYCLE_DIM {
        return Err(OperatorError::DimensionTooLarge {
            d,
            max: MAX_CYCLE_DIM,
        });
    }
    let mut cycles = Vec::new();
    let mut tail: Vec<usize> = Vec::with_capacity(d - 1);
    let mut used = vec![false; d];
    build_cycles(d, &mut tail, &mut used, &mut cycles);
    Ok(cycles)
}

fn build_cycles(d: usize, tail: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if tail.len() == d - 1 {
        // Cycle (0, tail[0], .., tail[d-2]) as a map.
        let mut map = vec![0usize; d];
        let mut prev = 0usize;
        for &next in tail.iter() {
            map[prev] = next;
            prev = next;
        }
        map[prev] = 0;
        out.push(Permutation { d, map });
        return;
    }
    for v in 1..d {
        if !used[v] {
            used[v] = true;
            tail.push(v);
            build_cycles(d, tail, used, out);
            tail.pop();
            used[v] = false;
        }
    }
}
