//! Real scalar abstraction so the whole stack runs on `f32` or `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real number type backing matrix entries, probabilities, and tolerances.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Converts an `f64` constant (tolerance, probability, matrix entry) into `T`.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 constant converts to scalar")
}

pub(crate) fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Tolerance that keeps its `f64`-grade value but widens with the scalar's
/// machine epsilon, so the same checks stay meaningful under `f32`.
pub(crate) fn scaled_tol<T: Scalar>(base: f64, eps_factor: f64) -> T {
    let base = real::<T>(base);
    let widened = T::epsilon() * real::<T>(eps_factor);
    if widened > base {
        widened
    } else {
        base
    }
}
