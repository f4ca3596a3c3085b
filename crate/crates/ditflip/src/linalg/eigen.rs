//! Hermitian eigenvalues via cyclic Jacobi rotations, and the trace norm.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{ComplexMatrix, LinalgError, Tolerance};
use crate::scalar::{real, scaled_tol, Scalar};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// Runs cyclic Jacobi sweeps until the off-diagonal Frobenius mass drops
/// below `1e-14 * ||m||_F` (widened for low-precision scalars). Matrices
/// here are small (at most 9x9 for bipartite qutrits), so simplicity wins.
pub fn hermitian_eigenvalues<T: Scalar>(
    m: &ComplexMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<Vec<T>, LinalgError> {
    m.require_hermitian(tol)?;
    let d = m.rows();

    // Work on the exactly-Hermitian average so the tolerance slack in the
    // input cannot bias the rotations.
    let mut a = m.adjoint();
    for r in 0..d {
        for c in 0..d {
            a[(r, c)] = (a[(r, c)] + m[(r, c)]).unscale(real::<T>(2.0));
        }
    }

    let norm = a.frobenius_norm();
    let target = norm * scaled_tol::<T>(1e-14, 4.0);
    if d > 1 && norm > T::zero() {
        let skip = target / real::<T>(d as f64);
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                break;
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    rotate(&mut a, p, q, skip);
                }
            }
        }
    }

    let mut eigs: Vec<T> = (0..d).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eigs)
}

/// Trace norm `sum |lambda_i|` of a Hermitian matrix.
pub fn trace_norm<T: Scalar>(m: &ComplexMatrix<T>, tol: &Tolerance<T>) -> Result<T, LinalgError> {
    let eigs = hermitian_eigenvalues(m, tol)?;
    Ok(eigs.into_iter().fold(T::zero(), |acc, l| acc + l.abs()))
}

fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let d = a.rows();
    let mut sum = T::zero();
    for p in 0..d {
        for q in 0..d {
            if p != q {
                sum = sum + a[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `a[(p, q)]`. The pivot `a_pq = |a_pq| e^{i phi}`
/// is absorbed into a complex Givens rotation; the angle obeys the real
/// symmetric update with `|a_pq|` as the off-diagonal element.
fn rotate<T: Scalar>(a: &mut ComplexMatrix<T>, p: usize, q: usize, skip: T) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= skip {
        return;
    }
    let one = T::one();
    let two = real::<T>(2.0);

    let tau = (a[(q, q)].re - a[(p, p)].re) / (two * mag);
    // Smaller-magnitude root of tan^2 - 2*tau*tan - 1 = 0.
    let t = if tau >= T::zero() {
        -(one / (tau + (tau * tau + one).sqrt()))
    } else {
        one / ((tau * tau + one).sqrt() - tau)
    };
    let c = one / (t * t + one).sqrt();
    let s = t * c;
    let phase = apq.unscale(mag); // e^{i phi}
    let zp = phase.conj().scale(s); // U[q][p]; U[p][q] = -conj(zp)

    let d = a.rows();
    // Columns p and q of A <- A U.
    for r in 0..d {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp.scale(c) + arq * zp;
        a[(r, q)] = arq.scale(c) - arp * zp.conj();
    }
    // Rows p and q of A <- U^† A.
    for r in 0..d {
        let apr = a[(p, r)];
        let aqr = a[(q, r)];
        a[(p, r)] = apr.scale(c) + aqr * zp.conj();
        a[(q, r)] = aqr.scale(c) - apr * zp;
    }
    // The rotation annihilates the pivot; clear rounding residue.
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::from(a[(p, p)].re);
    a[(q, q)] = Complex::from(a[(q, q)].re);
}
