//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar the walk can be computed in (`f32` or `f64`).
///
/// The associated constants are precision-dependent acceptance thresholds;
/// the `f64` values are the ones the crate's documentation quotes.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + FftNum + Default + Display + LowerExp
{
    /// Allowed deviation of a closed-form or spectral state's norm from one.
    const NORM_TOL: Self;
    /// Allowed norm drift accumulated over a full Runge-Kutta run.
    const DRIFT_TOL: Self;
    /// Largest probability tolerated on the outermost lattice sites.
    const EDGE_TOL: Self;
    /// Magnitude at which Miller's downward recurrence rescales its running pair.
    const RESCALE: Self;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    #[inline]
    fn from_site(x: i64) -> Self {
        Self::from_i64(x).expect("site index representable in scalar type")
    }

    /// Lossless-enough view used for error reporting and output.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const NORM_TOL: Self = 1e-12;
    const DRIFT_TOL: Self = 1e-9;
    const EDGE_TOL: Self = 1e-14;
    const RESCALE: Self = 1e250;
}

impl Real for f32 {
    const NORM_TOL: Self = 1e-5;
    const DRIFT_TOL: Self = 1e-3;
    const EDGE_TOL: Self = 1e-7;
    const RESCALE: Self = 1e30;
}
