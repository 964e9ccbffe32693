use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point `(x, y)`.
pub type Lattice = (i64, i64);

/// The line `A·x + B·y = C` in canonical form: `gcd(A, B) = 1` and
/// `A > 0`, or `A = 0` and `B > 0`.
///
/// The derived ordering is lexicographic on `(A, B, C)` and is the tie-break
/// used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
}

impl Line {
    /// Canonicalize `a·x + b·y = c`.
    ///
    /// Fails when `a = b = 0` or when `gcd(a, b)` does not divide `c` (such a
    /// line carries no lattice points).
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::domain("line with A = B = 0"));
        }
        let g = a.gcd(&b);
        if c % g != 0 {
            return Err(Error::domain(format!(
                "{a}x + {b}y = {c} has no lattice points"
            )));
        }
        let (mut a, mut b, mut c) = (a / g, b / g, c / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    /// Re-canonicalize; identity on lines built through [`Line::new`].
    pub fn canonical(self) -> Result<Self> {
        Line::new(self.a, self.b, self.c)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().is_ok_and(|l| l == *self)
    }

    /// Exact membership test with 128-bit intermediates.
    pub fn contains(&self, (x, y): Lattice) -> bool {
        self.a as i128 * x as i128 + self.b as i128 * y as i128 == self.c as i128
    }

    /// Slope `−A/B`, `None` for vertical lines.
    pub fn slope(&self) -> Option<Ratio<i64>> {
        (self.b != 0).then(|| Ratio::new(-self.a, self.b))
    }

    pub fn is_vertical(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// The canonical line through two distinct lattice points; symmetric in its arguments.
pub fn line_through(p: Lattice, q: Lattice) -> Result<Line> {
    if p == q {
        return Err(Error::domain("line through a single point is undetermined"));
    }
    let (a, b) = normal(q.0 - p.0, q.1 - p.1);
    let c = a as i128 * p.0 as i128 + b as i128 * p.1 as i128;
    let c = i64::try_from(c).map_err(|_| Error::domain("line constant overflows i64"))?;
    Line::new(a, b, c)
}

pub fn line_contains(line: &Line, point: Lattice) -> bool {
    line.contains(point)
}

/// Reduced primitive direction with a fixed sign: `dx > 0`, or `dx = 0, dy > 0`.
#[inline]
pub(crate) fn direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = dx.gcd(&dy);
    let (dx, dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// Canonical normal `(A, B)` of a direction.
#[inline]
fn normal(dx: i64, dy: i64) -> (i64, i64) {
    let (dx, dy) = direction(dx, dy);
    // (A, B) = (dy, −dx), then flip to A > 0 or (A = 0, B > 0)
    let (a, b) = (dy, -dx);
    if a < 0 || (a == 0 && b < 0) {
        (-a, -b)
    } else {
        (a, b)
    }
}
