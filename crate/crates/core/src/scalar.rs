//! Floating-point scalar abstraction shared by every module.
//!
//! All numerics are written against [`Real`], implemented for `f32` and
//! `f64`. Each implementation carries the tolerances appropriate to its
//! precision; the `f64` values are the ones the crate is calibrated for.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Tolerance for quantities that are exact up to rounding (unitarity,
    /// subspace leakage, probability sums).
    fn exact_tol() -> Self;

    /// Tolerance for structural checks: Hermiticity, normalization, trace.
    fn structure_tol() -> Self;

    /// Largest negative eigenvalue tolerated (and clamped to zero) when
    /// taking square roots of nominally PSD matrices.
    fn clamp_tol() -> Self;

    /// Relative cutoff below which an eigenvalue of a PSD matrix is treated
    /// as numerically zero.
    fn rank_tol() -> Self;

    /// Converts an `f64` literal. Every value passed here is representable.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to every Real type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real values convert to f64")
    }
}

impl Real for f64 {
    fn exact_tol() -> Self {
        1e-12
    }
    fn structure_tol() -> Self {
        1e-10
    }
    fn clamp_tol() -> Self {
        1e-9
    }
    fn rank_tol() -> Self {
        1e-14
    }
}

impl Real for f32 {
    fn exact_tol() -> Self {
        1e-5
    }
    fn structure_tol() -> Self {
        1e-4
    }
    fn clamp_tol() -> Self {
        1e-4
    }
    fn rank_tol() -> Self {
        1e-6
    }
}
