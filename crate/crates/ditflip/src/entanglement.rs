//! Partial transpose and negativity.

use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, LinalgError, Tolerance};
use crate::scalar::{real, scaled_tol, Scalar};
use crate::state::{DensityMatrix, Subsystem};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EntanglementError {
    #[error("state is not bipartite")]
    NotBipartite,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Negativity in both of its standard forms, from one eigendecomposition of
/// the partial transpose.
///
/// `raw = (||pt||_1 - 1)/2 = sum |negative eigenvalues|`, while
/// `normalized = (||pt||_1 - 1)/(d - 1)` with `d = min(d_A, d_B)`. The two
/// coincide only for `d = 3`; both are reported.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult<T: Scalar> {
    pub raw: T,
    pub normalized: T,
    /// Ascending; eigenvalues with `|lambda| < 1e-12` are treated as zero.
    pub negative_eigenvalues: Vec<T>,
}

/// Transpose of one subsystem's indices:
/// target B sends `rho[(i,j),(m,n)]` to `out[(i,n),(m,j)]`, target A sends it
/// to `out[(m,j),(i,n)]`. An exact involution.
pub fn partial_transpose<T: Scalar>(
    rho: &DensityMatrix<T>,
    target: Subsystem,
) -> Result<ComplexMatrix<T>, EntanglementError> {
    let (d_a, d_b) = rho
        .dims()
        .bipartite()
        .ok_or(EntanglementError::NotBipartite)?;
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(d_a * d_b, d_a * d_b, |r, c| {
        let (ra, rb) = (r / d_b, r % d_b);
        let (ca, cb) = (c / d_b, c % d_b);
        match target {
            Subsystem::B => m[(ra * d_b + cb, ca * d_b + rb)],
            Subsystem::A => m[(ca * d_b + rb, ra * d_b + cb)],
        }
    });
    Ok(out)
}

/// Both negativity values of a bipartite state, from the partial transpose
/// over subsystem B (the choice does not affect the spectrum).
pub fn negativity<T: Scalar>(
    rho: &DensityMatrix<T>,
) -> Result<NegativityResult<T>, EntanglementError> {
    let (d_a, d_b) = rho
        .dims()
        .bipartite()
        .ok_or(EntanglementError::NotBipartite)?;
    let pt = partial_transpose(rho, Subsystem::B)?;
    // The state was validated on construction; give its partial transpose a
    // little Hermiticity headroom beyond the construction tolerance.
    let eigs = hermitian_eigenvalues(&pt, &Tolerance::new(scaled_tol(1e-8, 512.0)))?;

    let trace_norm = eigs.iter().fold(T::zero(), |acc, l| acc + l.abs());
    let raw = ((trace_norm - T::one()) / real::<T>(2.0)).max(T::zero());
    let d = d_a.min(d_b);
    let normalized = if d > 1 {
        ((trace_norm - T::one()) / real::<T>((d - 1) as f64)).max(T::zero())
    } else {
        T::zero()
    };

    let cutoff = scaled_tol::<T>(1e-12, 16.0);
    let negative_eigenvalues = eigs.into_iter().filter(|&l| l < -cutoff).collect();
    Ok(NegativityResult {
        raw,
        normalized,
        negative_eigenvalues,
    })
}
