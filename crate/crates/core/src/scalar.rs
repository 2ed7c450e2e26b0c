//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Largest of `floor` and a small multiple of machine epsilon.
    ///
    /// Iteration stopping rules are written for `f64`; for `f32` the
    /// requested tolerance would be unreachable.
    fn tol(floor: f64) -> Self {
        Self::lit(floor).max(Self::epsilon() * Self::lit(4.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}
