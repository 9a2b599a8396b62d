//! Scalar abstraction: all pool and portfolio math is generic over the
//! floating-point type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the crate: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + ToPrimitive + Debug + Display + 'static {}

/// Lift an `f64` constant into the working scalar type.
#[inline]
pub fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant not representable in scalar type")
}

/// Default relative tolerance for the iterative invariant solvers.
///
/// 1e-12 in `f64`; widened to a multiple of machine epsilon for narrower
/// scalars where 1e-12 is unreachable.
#[inline]
pub fn solver_tolerance<F: Real>() -> F {
    real::<F>(1e-12).max(F::epsilon() * real::<F>(64.0))
}

/// Compensated (Neumaier) summation, deterministic in iteration order.
pub fn compensated_sum<F: Real>(values: impl IntoIterator<Item = F>) -> F {
    let mut sum = F::zero();
    let mut compensation = F::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation = compensation + ((sum - t) + v);
        } else {
            compensation = compensation + ((v - t) + sum);
        }
        sum = t;
    }
    sum + compensation
}
