//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Real floating-point type the library is generic over (`f32` or `f64`).
///
/// The associated tolerances are the numerical contract of the crate. The
/// `f64` values are the reference ones; `f32` uses the same roles scaled to
/// single precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Clamp window for boundary quantities (symplectic eigenvalues at 1/2,
    /// tiny negative roots, discord just below zero).
    const CLAMP_TOL: Self;
    /// Absolute tolerance on covariance symmetry.
    const SYMMETRY_TOL: Self;
    /// Threshold below which the intensity-correlation denominator counts as zero.
    const DEGENERATE_TOL: Self;
    /// Max-norm tolerance on `S^dagger S - I`.
    const UNITARY_TOL: Self;

    /// One draw from the standard normal distribution.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    const CLAMP_TOL: f64 = 1e-9;
    const SYMMETRY_TOL: f64 = 1e-12;
    const DEGENERATE_TOL: f64 = 1e-15;
    const UNITARY_TOL: f64 = 1e-10;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
        StandardNormal.sample(rng)
    }
}

impl Scalar for f32 {
    const CLAMP_TOL: f32 = 1e-4;
    const SYMMETRY_TOL: f32 = 1e-5;
    const DEGENERATE_TOL: f32 = 1e-7;
    const UNITARY_TOL: f32 = 1e-5;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f32 {
        StandardNormal.sample(rng)
    }
}

/// Converts an `f64` literal into `T`. Infallible for `f32`/`f64`.
#[inline]
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub(crate) fn half<T: Scalar>() -> T {
    lit(0.5)
}

#[inline]
pub(crate) fn two<T: Scalar>() -> T {
    lit(2.0)
}
