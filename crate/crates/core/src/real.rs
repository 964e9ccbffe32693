//! Scalar abstraction for the real-valued parts of the library.
//!
//! Everything that touches `li`, the remainder models, band geometry or the
//! bound curves is written against [`Real`]. Integer geometry (lines, covers)
//! stays on fixed-width integers.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the analytic routines.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
    /// Euler–Mascheroni constant.
    fn euler_gamma() -> Self;

    /// Lossy conversion from `f64`; exact for every constant used in this crate.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_u64_lossy(v: u64) -> Self {
        Self::from_u64(v).expect("u64 representable as float")
    }
}

impl Real for f32 {
    fn euler_gamma() -> Self {
        0.577_215_7
    }
}

impl Real for f64 {
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
}
