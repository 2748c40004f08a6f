//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the geometry is computed in: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Converts an `f64` constant into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into this scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// A tolerance that is `x` for `f64` but never drops below a few ulps of
    /// the scalar type, so `f32` builds get a usable threshold.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(64.0))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Euclidean dot product of two equally sized slices.
#[inline]
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Angle between two unit vectors as `2·atan2(|u − v|, |u + v|)`.
///
/// Equal to `arccos(u·v)` but accurate near 0 and π, and exactly 0 for
/// identical inputs.
#[inline]
pub(crate) fn unit_angle<T: Scalar>(u: &[T], v: &[T]) -> T {
    let (d, s) = chord_pair(u, v);
    T::lit(2.0) * d.atan2(s)
}

/// Angle between the lines through two unit vectors, in `[0, π/2]`.
#[inline]
pub(crate) fn unit_line_angle<T: Scalar>(u: &[T], v: &[T]) -> T {
    let (d, s) = chord_pair(u, v);
    T::lit(2.0) * d.min(s).atan2(d.max(s))
}

#[inline]
fn chord_pair<T: Scalar>(u: &[T], v: &[T]) -> (T, T) {
    let mut diff = T::zero();
    let mut sum = T::zero();
    for (&a, &b) in u.iter().zip(v) {
        diff = diff + (a - b) * (a - b);
        sum = sum + (a + b) * (a + b);
    }
    (diff.sqrt(), sum.sqrt())
}
