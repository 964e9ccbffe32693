use serde::{Deserialize, Serialize};

use super::line::Lattice;
use crate::error::{Error, Result};
use crate::primes::first_n_primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `(k, p_k)`
    Direct,
    /// `(p_k, k)`
    Inverse,
}

/// The k-th prime together with its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePoint {
    pub index: u64,
    pub value: u64,
    pub orientation: Orientation,
}

impl PrimePoint {
    pub fn direct(index: u64, value: u64) -> Self {
        PrimePoint {
            index,
            value,
            orientation: Orientation::Direct,
        }
    }

    pub fn inverse(index: u64, value: u64) -> Self {
        PrimePoint {
            index,
            value,
            orientation: Orientation::Inverse,
        }
    }

    pub fn coords(&self) -> Lattice {
        let (k, p) = (self.index as i64, self.value as i64);
        match self.orientation {
            Orientation::Direct => (k, p),
            Orientation::Inverse => (p, k),
        }
    }
}

/// `(k, p_k)` for `k = 1..=n`.
pub fn prime_points(n: usize) -> Result<Vec<PrimePoint>> {
    Ok(first_n_primes(n)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| PrimePoint::direct(i as u64 + 1, p))
        .collect())
}

/// Points from a prime list, where `primes[i]` is `p_{offset + i + 1}`.
pub fn points_from_primes(primes: &[u64], offset: u64, orientation: Orientation) -> Vec<PrimePoint> {
    primes
        .iter()
        .enumerate()
        .map(|(i, &p)| PrimePoint {
            index: offset + i as u64 + 1,
            value: p,
            orientation,
        })
        .collect()
}

/// Check the [`PrimePoint`] invariants: `value = p_index` and distinct indices.
pub fn validate_points(points: &[PrimePoint]) -> Result<()> {
    let max = points.iter().map(|p| p.index).max().unwrap_or(0) as usize;
    let primes = first_n_primes(max)?;
    let mut seen = std::collections::HashSet::with_capacity(points.len());
    for p in points {
        if p.index == 0 || primes[p.index as usize - 1] != p.value {
            return Err(Error::domain(format!(
                "point index {} does not carry p_{}",
                p.index, p.index
            )));
        }
        if !seen.insert(p.index) {
            return Err(Error::domain(format!("duplicate point index {}", p.index)));
        }
    }
    Ok(())
}
