//! Scalar abstraction: everything geometric is generic over a floating-point
//! type implementing [`Real`]. Concrete work happens in `f64`; `f32` is
//! supported for storage-constrained callers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the crate.
///
/// The two epsilon accessors centralize the tolerances that depend on the
/// precision of the type rather than on the mathematics:
/// `pole_eps` is the radius inside which a point counts as sitting on an
/// inversion pole, `ortho_eps` is the slack allowed when validating
/// orthogonal matrices and boundary-anchored map parameters.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    fn pole_eps() -> Self;
    fn ortho_eps() -> Self;

    /// Veltkamp splitting constant 2^ceil(p/2) + 1 for a p-bit mantissa,
    /// used by the exact-product building block of compensated sums.
    fn split_factor() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal must convert")
    }
}

impl Real for f64 {
    fn pole_eps() -> Self {
        1e-14
    }
    fn ortho_eps() -> Self {
        1e-12
    }
    fn split_factor() -> Self {
        134_217_729.0 // 2^27 + 1
    }
}

impl Real for f32 {
    fn pole_eps() -> Self {
        1e-6
    }
    fn ortho_eps() -> Self {
        1e-5
    }
    fn split_factor() -> Self {
        4097.0 // 2^12 + 1
    }
}

/// Shorthand for `T::of` that reads better at call sites with turbofish.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::of(x)
}
