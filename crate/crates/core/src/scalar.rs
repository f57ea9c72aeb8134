//! Floating-point scalar abstraction used throughout the crate.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Complex number over the generic scalar.
pub type C<T> = Complex<T>;

/// Real floating-point scalar: `f32` or `f64`.
///
/// Everything the numerics need in one bound. Constants are written as `f64`
/// literals and converted with [`Scalar::of`].
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` constant into this scalar type.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant")
    }

    /// Lossy view as `f64`, for diagnostics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Purely real complex number.
pub fn cr<T: Scalar>(re: T) -> C<T> {
    C::new(re, T::zero())
}

/// `i` times a real number.
pub fn ci<T: Scalar>(im: T) -> C<T> {
    C::new(T::zero(), im)
}
