//! Farey sequences.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Consecutive terms `a/b < a_next/b_next` of a Farey sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyPair {
    pub a: i64,
    pub b: i64,
    pub a_next: i64,
    pub b_next: i64,
}

impl FareyPair {
    /// `a_next·b − a·b_next`, which is 1 for neighbours.
    pub fn determinant(&self) -> i64 {
        self.a_next * self.b - self.a * self.b_next
    }

    pub fn left(&self) -> Ratio<i64> {
        Ratio::new_raw(self.a, self.b)
    }

    pub fn right(&self) -> Ratio<i64> {
        Ratio::new_raw(self.a_next, self.b_next)
    }
}

/// The Farey sequence of level `q`: reduced fractions in `[0, 1]` with
/// denominator at most `q`, increasing.
///
/// ```
/// use prime_lines::bounds::farey;
/// let f: Vec<String> = farey(3).unwrap().iter().map(|r| r.to_string()).collect();
/// assert_eq!(f, ["0", "1/3", "1/2", "2/3", "1"]);
/// ```
pub fn farey(q: u64) -> Result<Vec<Ratio<i64>>> {
    if q == 0 {
        return Err(Error::domain("Farey level must be at least 1"));
    }
    let q = i64::try_from(q).map_err(|_| Error::domain("Farey level too large"))?;
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, q);
    let mut out = vec![Ratio::new_raw(a, b)];
    while c <= d {
        out.push(Ratio::new_raw(c, d));
        let m = (q + b) / d;
        (a, b, c, d) = (c, d, m * c - a, m * d - b);
    }
    Ok(out)
}

/// Consecutive pairs of [`farey`]`(q)`.
pub fn farey_pairs(q: u64) -> Result<Vec<FareyPair>> {
    Ok(farey(q)?
        .windows(2)
        .map(|w| FareyPair {
            a: *w[0].numer(),
            b: *w[0].denom(),
            a_next: *w[1].numer(),
            b_next: *w[1].denom(),
        })
        .collect())
}

/// `1 + Σ_{m<=q} φ(m)`, the length of the level-`q` sequence.
pub fn farey_len(q: u64) -> u64 {
    let q = q as usize;
    let mut phi: Vec<u64> = (0..=q as u64).collect();
    for i in 2..=q {
        if phi[i] == i as u64 {
            for j in (i..=q).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    1 + phi.iter().skip(1).sum::<u64>()
}
