//! Lines through the prime number graph.
//!
//! The *prime points* are `(k, p_k)` with `p_k` the k-th prime. This crate
//! computes, exactly for small `n`:
//!
//! * `L(n)`, the fewest lines covering the first `n` prime points, and its
//!   distinct-slope variant;
//! * `B(n)`, the most of the first `n` prime points on a single line;
//! * the awkward primes, where `L` increases.
//!
//! Alongside sit the analytic pieces these quantities are compared against:
//! the logarithmic integral, remainder models `R(x)` for `|π(x) − li(x)|`,
//! Farey-dissection line covers, slope-`1/k` witness lines and the band
//! `|y − li(x)| <= R(x)`.
//!
//! Real-valued code is generic over [`Real`] (`f32`/`f64`); the aliases
//! below fix it to `f64`, which is what the rest of the crate uses.

pub mod bounds;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod oeis;
pub mod primes;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

/// Remainder model over `f64`.
pub type Model = primes::RemainderModel<f64>;
/// Bound-curve sample over `f64`.
pub type CurvePoint = bounds::BoundCurvePoint<f64>;
/// Band intersection interval over `f64`.
pub type BandInterval = geometry::BandInterval<f64>;
