//! Flip channels for d-level quantum systems.
//!
//! The qubit bit flip generalizes to qudits in several inequivalent ways;
//! this crate implements the whole family as Kraus channels — pairwise
//! flips, su(d)-generator flips, all-pairs flips, cyclic shifts, damped
//! shifts, and per-ordering shuffled shifts — together with the machinery to
//! study what they do to entanglement: dense complex linear algebra with a
//! Jacobi Hermitian eigensolver, density matrices, Werner states, partial
//! transpose, and negativity.
//!
//! Everything is generic over the real scalar (`f32` or `f64`) through the
//! [`scalar::Scalar`] trait; the aliases below pin the common choices.

pub mod channel;
pub mod entanglement;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod scalar;
pub mod state;

pub use channel::{ChannelError, FlipProbabilities, KrausChannel};
pub use entanglement::{negativity, partial_transpose, EntanglementError, NegativityResult};
pub use linalg::{hermitian_eigenvalues, trace_norm, ComplexMatrix, LinalgError, Tolerance};
pub use operators::{
    backward_operator, enumerate_d_cycles, forward_operator, gamma_operator, gellmann_matrices,
    pairwise_flip_operator, permutation_operator, OperatorError, Permutation, MAX_CYCLE_DIM,
};
pub use scalar::Scalar;
pub use state::{
    phi_plus, pure_density, werner, DensityMatrix, StateError, Subsystem, SystemDims, WernerSpec,
};

pub type Complex32 = num_complex::Complex<f32>;
pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type KrausChannel64 = KrausChannel<f64>;
pub type NegativityResult64 = NegativityResult<f64>;
