//! Seeded random matrices and states for property tests and audits.

use num_complex::Complex;
use rand::Rng;

use crate::linalg::ComplexMatrix;
use crate::scalar::{real, Scalar};
use crate::state::{DensityMatrix, SystemDims};

/// Random unitary built from composed Givens rotations with random angles and
/// phases, finished with a random diagonal phase.
pub fn random_unitary<T: Scalar, R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix<T> {
    assert!(d >= 1);
    let tau = std::f64::consts::TAU;
    let mut u = ComplexMatrix::<T>::identity(d);
    for i in 0..d {
        for j in (i + 1)..d {
            let theta = rng.random_range(0.0..tau);
            let phi = rng.random_range(0.0..tau);
            let (c, s) = (real::<T>(theta.cos()), real::<T>(theta.sin()));
            let phase = Complex::new(real::<T>(phi.cos()), real::<T>(phi.sin()));
            let mut g = ComplexMatrix::<T>::identity(d);
            g[(i, i)] = Complex::from(c);
            g[(j, j)] = Complex::from(c);
            g[(i, j)] = -phase.conj().scale(s);
            g[(j, i)] = phase.scale(s);
            u = &u * &g;
        }
    }
    let mut diag = ComplexMatrix::<T>::zeros(d, d);
    for i in 0..d {
        let phi = rng.random_range(0.0..tau);
        diag[(i, i)] = Complex::new(real::<T>(phi.cos()), real::<T>(phi.sin()));
    }
    &u * &diag
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<T: Scalar, R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::<T>::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex::from(real::<T>(rng.random_range(-1.0..1.0)));
        for j in (i + 1)..d {
            let z = Complex::new(
                real::<T>(rng.random_range(-1.0..1.0)),
                real::<T>(rng.random_range(-1.0..1.0)),
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random normalized state vector.
pub fn random_pure_state<T: Scalar, R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex<T>> {
    loop {
        let psi: Vec<Complex<T>> = (0..d)
            .map(|_| {
                Complex::new(
                    real::<T>(rng.random_range(-1.0..1.0)),
                    real::<T>(rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        let norm = psi
            .iter()
            .fold(T::zero(), |acc, e| acc + e.norm_sqr())
            .sqrt();
        if norm > real::<T>(1e-3) {
            return psi.into_iter().map(|e| e.unscale(norm)).collect();
        }
    }
}

/// Random full-support density matrix `U diag(w) U^†` with simplex weights.
pub fn random_density<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    dims: SystemDims,
) -> DensityMatrix<T> {
    let d = dims.total();
    let mut weights: Vec<T> = (0..d)
        .map(|_| real::<T>(-rng.random_range(1e-12..1.0f64).ln()))
        .collect();
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    for w in &mut weights {
        *w = *w / total;
    }
    let u = random_unitary::<T, R>(rng, d);
    let mut scaled = u.clone();
    for c in 0..d {
        for r in 0..d {
            scaled[(r, c)] = scaled[(r, c)].scale(weights[c]);
        }
    }
    let rho = &scaled * &u.adjoint();
    DensityMatrix::new(rho, dims).expect("generated density matrix is valid")
}
