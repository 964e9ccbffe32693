//! Intersection of a line with the band `|y − li(x)| <= R(x)`.
//!
//! When `li + R` and `li − R` are both concave, `s·x + t − (li + R)` is convex,
//! so the part of the line below the upper curve is one interval, and the part
//! below the lower curve is one interval too. The line is inside the band on
//! the first interval minus the second: at most two pieces.

use serde::{Deserialize, Serialize};

use super::line::Line;
use crate::error::{Error, Result};
use crate::primes::{li, PrimeTable, RemainderModel};
use crate::real::Real;

/// Grid density used for the concavity scans, points per unit of `ln x`.
const GRID_PER_E_FOLD: f64 = 64.0;

/// Relative step of the second differences.
const D2_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandInterval<T> {
    pub lo: T,
    pub hi: T,
    /// Primes in `[lo, hi]`.
    pub primes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReport<T> {
    pub line: Line,
    pub x0: T,
    pub x1: T,
    pub intervals: Vec<BandInterval<T>>,
}

fn upper<T: Real>(model: &RemainderModel<T>, x: T) -> Result<T> {
    Ok(li(x) + model.bound(x)?)
}

fn lower<T: Real>(model: &RemainderModel<T>, x: T) -> Result<T> {
    Ok(li(x) - model.bound(x)?)
}

/// Central second difference with step `D2_STEP·x`, normalised by `h²`.
fn second_difference<T: Real>(f: impl Fn(T) -> Result<T>, x: T) -> Result<T> {
    let h = x * T::lit(D2_STEP);
    Ok((f(x - h)? - T::lit(2.0) * f(x)? + f(x + h)?) / (h * h))
}

/// First grid point in `[x0, x1]` where `li + R` or `li − R` fails the
/// second-difference concavity test, if any.
pub fn concavity_violation<T: Real>(model: &RemainderModel<T>, x0: T, x1: T) -> Result<Option<T>> {
    for x in log_grid(x0, x1) {
        let du = second_difference(|v| upper(model, v), x)?;
        let dl = second_difference(|v| lower(model, v), x)?;
        if !(du < T::zero() && dl < T::zero()) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Smallest grid point of `[start, x_hi]` beyond which both `li ± R` test
/// concave, where `start` is just inside the model's domain.
///
/// Fails if the last grid point itself is not concave.
pub fn concavity_threshold<T: Real>(model: &RemainderModel<T>, x_hi: T) -> Result<T> {
    // stay a step inside the domain so the stencil is always evaluable
    let pad = T::one() + T::lit(2.0 * D2_STEP);
    let start = model.domain_start().max(T::lit(2.0)) * pad;
    let end = x_hi.min(model.domain_end() / pad);
    let grid = log_grid(start, end);
    let mut threshold = None;
    for &x in grid.iter().rev() {
        let du = second_difference(|v| upper(model, v), x)?;
        let dl = second_difference(|v| lower(model, v), x)?;
        if du < T::zero() && dl < T::zero() {
            threshold = Some(x);
        } else {
            break;
        }
    }
    threshold.ok_or(Error::Concavity {
        x: end.to_f64().unwrap_or(f64::NAN),
    })
}

fn log_grid<T: Real>(x0: T, x1: T) -> Vec<T> {
    if !(x1 > x0) {
        return vec![x0];
    }
    let (a, b) = (x0.ln(), x1.ln());
    let steps = ((b - a) * T::lit(GRID_PER_E_FOLD)).ceil().to_usize().unwrap_or(1).max(16);
    let n = T::from_usize(steps).unwrap();
    (0..=steps)
        .map(|i| {
            if i == steps {
                x1
            } else {
                (a + (b - a) * T::from_usize(i).unwrap() / n).exp()
            }
        })
        .collect()
}

/// The set `{x ∈ [x0, x1] : |s·x + t − li(x)| <= R(x)}` for the line
/// `y = s·x + t`, as at most two closed intervals with prime counts.
///
/// `primes` must reach `x1`. Endpoints are located to `1e-6·x` and always
/// snapped to the inside of the band.
pub fn band_intersection<T: Real>(
    line: &Line,
    model: &RemainderModel<T>,
    x0: T,
    x1: T,
    primes: &PrimeTable,
) -> Result<BandReport<T>> {
    if line.b == 0 {
        return Err(Error::domain("vertical line has no y = s·x + t form"));
    }
    if !(x0 <= x1) {
        return Err(Error::domain("empty x range"));
    }
    let pad = T::one() + T::lit(D2_STEP);
    if x0 / pad < model.domain_start() || x1 * pad > model.domain_end() {
        return Err(Error::domain("x range leaves the model's domain"));
    }
    if let Some(x) = concavity_violation(model, x0, x1)? {
        return Err(Error::Concavity {
            x: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let b = T::from_i64(line.b).unwrap();
    let s = -T::from_i64(line.a).unwrap() / b;
    let t = T::from_i64(line.c).unwrap() / b;

    // g1 <= 0: below the upper curve; g2 >= 0: above the lower curve
    let g1 = |x: T| -> Result<T> { Ok(s * x + t - upper(model, x)?) };
    let g2 = |x: T| -> Result<T> { Ok(s * x + t - lower(model, x)?) };

    let inside_upper = |v: T| v <= T::zero();
    let below_lower = |v: T| v < T::zero();
    let Some(keep) = convex_set(&g1, x0, x1, &inside_upper)? else {
        return Ok(BandReport {
            line: *line,
            x0,
            x1,
            intervals: Vec::new(),
        });
    };
    let (l1, r1) = (keep.lo.inner(), keep.hi.inner());

    let mut pieces = Vec::new();
    match convex_set(&g2, x0, x1, &below_lower)? {
        None => pieces.push((l1, r1)),
        Some(hole) => {
            // points left of the hole, then right of it
            if let Edge::Cut { outer, .. } = hole.lo {
                let hi = outer.min(r1);
                if l1 <= hi {
                    pieces.push((l1, hi));
                }
            }
            if let Edge::Cut { outer, .. } = hole.hi {
                let lo = outer.max(l1);
                if lo <= r1 {
                    pieces.push((lo, r1));
                }
            }
        }
    }
    let intervals = pieces
        .into_iter()
        .map(|(lo, hi)| BandInterval {
            lo,
            hi,
            primes: primes_in(primes, lo, hi),
        })
        .collect();
    Ok(BandReport {
        line: *line,
        x0,
        x1,
        intervals,
    })
}

fn primes_in<T: Real>(primes: &PrimeTable, lo: T, hi: T) -> u64 {
    let lo = lo.to_f64().unwrap().ceil() as u64;
    let hi = hi.to_f64().unwrap().floor() as u64;
    if hi < lo {
        return 0;
    }
    primes.pi_int(hi) - primes.pi_int(lo.saturating_sub(1))
}

#[derive(Debug, Clone, Copy)]
enum Edge<T> {
    /// The set reaches this end of the search range.
    Range(T),
    /// The set ends between `inner` (in the set) and `outer` (not in it).
    Cut { inner: T, outer: T },
}

impl<T: Copy> Edge<T> {
    fn inner(&self) -> T {
        match *self {
            Edge::Range(x) => x,
            Edge::Cut { inner, .. } => inner,
        }
    }
}

struct Edges<T> {
    lo: Edge<T>,
    hi: Edge<T>,
}

/// `{x ∈ [x0, x1] : inside(g(x))}` for convex `g` and a sublevel predicate;
/// an interval, or `None` when empty.
fn convex_set<T: Real>(
    g: &impl Fn(T) -> Result<T>,
    x0: T,
    x1: T,
    inside: &impl Fn(T) -> bool,
) -> Result<Option<Edges<T>>> {
    let xm = golden_min(g, x0, x1)?;
    let (in0, in1) = (inside(g(x0)?), inside(g(x1)?));
    let seed = if inside(g(xm)?) {
        xm
    } else if in0 {
        x0
    } else if in1 {
        x1
    } else {
        return Ok(None);
    };
    let lo = if in0 {
        Edge::Range(x0)
    } else {
        boundary(g, x0, seed, inside)?
    };
    let hi = if in1 {
        Edge::Range(x1)
    } else {
        boundary(g, x1, seed, inside)?
    };
    Ok(Some(Edges { lo, hi }))
}

/// Bisect between `out` (not inside) and `inn` (inside) to `1e-6·x`.
fn boundary<T: Real>(
    g: &impl Fn(T) -> Result<T>,
    mut out: T,
    mut inn: T,
    inside: &impl Fn(T) -> bool,
) -> Result<Edge<T>> {
    let tol = T::lit(1e-6);
    for _ in 0..200 {
        if (out - inn).abs() <= tol * out.abs().max(inn.abs()) {
            break;
        }
        let mid = (out + inn) / T::lit(2.0);
        if inside(g(mid)?) {
            inn = mid;
        } else {
            out = mid;
        }
    }
    Ok(Edge::Cut {
        inner: inn,
        outer: out,
    })
}

/// Minimiser of a quasi-convex function by golden-section search in `ln x`.
fn golden_min<T: Real>(g: &impl Fn(T) -> Result<T>, x0: T, x1: T) -> Result<T> {
    if x1 <= x0 {
        return Ok(x0);
    }
    let ratio = T::lit(0.618_033_988_749_894_8);
    let (mut a, mut b) = (x0.ln(), x1.ln());
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut gc = g(c.exp())?;
    let mut gd = g(d.exp())?;
    for _ in 0..200 {
        if (b - a).abs() < T::lit(1e-12) {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c.exp())?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d.exp())?;
        }
    }
    Ok(((a + b) / T::lit(2.0)).exp().max(x0).min(x1))
}
