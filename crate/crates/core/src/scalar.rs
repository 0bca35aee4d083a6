//! Scalar abstraction.
//!
//! Every numerical routine in the crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. Tolerances that depend on the working
//! precision live here as associated constants so that the same algorithm can
//! be instantiated at either width.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar used throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default absolute tolerance of [`crate::QuadratureSpec`].
    const QUAD_ABS_TOL: f64;
    /// Default relative tolerance of [`crate::QuadratureSpec`].
    const QUAD_REL_TOL: f64;
    /// Entrywise tolerance for the Hermitian check on matrix construction.
    const HERMITIAN_TOL: f64;
    /// Relative size of the last retained power-series term.
    const SERIES_TOL: f64;
    /// Off-diagonal convergence threshold of the Jacobi eigensolver.
    const JACOBI_TOL: f64;
    /// Distance from the unit sphere below which a point is not interior.
    const BOUNDARY_EPS: f64;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a small unsigned integer into `Self`.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {
    const QUAD_ABS_TOL: f64 = 1e-6;
    const QUAD_REL_TOL: f64 = 1e-5;
    const HERMITIAN_TOL: f64 = 1e-5;
    const SERIES_TOL: f64 = 1e-8;
    const JACOBI_TOL: f64 = 1e-7;
    const BOUNDARY_EPS: f64 = 1e-4;
}

impl Real for f64 {
    const QUAD_ABS_TOL: f64 = 1e-12;
    const QUAD_REL_TOL: f64 = 1e-10;
    const HERMITIAN_TOL: f64 = 1e-12;
    const SERIES_TOL: f64 = 1e-17;
    const JACOBI_TOL: f64 = 1e-15;
    const BOUNDARY_EPS: f64 = 1e-9;
}
