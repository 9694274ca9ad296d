//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the scalar type.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts an integer into the scalar type.
#[inline]
pub fn int<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer representable in scalar type")
}

/// `πi` as a complex number.
#[inline]
pub fn pi_i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::PI())
}

/// `k·πi` as a complex number.
#[inline]
pub fn k_pi_i<T: Real>(k: i64) -> Complex<T> {
    Complex::new(T::zero(), T::PI() * int::<T>(k))
}

/// Real number embedded in the complex plane.
#[inline]
pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Rounds to the nearest integer, returning the rounding error too.
#[inline]
pub fn nearest_int<T: Real>(x: T) -> (i64, T) {
    let r = x.round();
    (r.to_i64().unwrap_or(0), (x - r).abs())
}

/// A residual tolerance of `x`, widened to `64·ε` for scalar types too coarse
/// to reach it.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    lit::<T>(x).max(T::epsilon() * lit::<T>(64.0))
}
