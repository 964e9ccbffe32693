//! `L(1..=n)` by incremental exact search, and the awkward primes.

use serde::{Deserialize, Serialize};

use super::exact::exact_on;
use super::instance::Instance;
use super::solution::CoverSolution;
use crate::error::{Error, Result};
use crate::geometry::{line_through, prime_points, Line, PrimePoint, DEFAULT_PAIR_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LEntry {
    pub n: usize,
    pub size: usize,
    /// `size` is exactly `L(n)` (or `L_np(n)`); otherwise an upper bound.
    pub optimal: bool,
    pub nodes: u64,
}

/// `[L(1), ..., L(n_max)]` over the first `n_max` prime points.
pub fn l_sequence(n_max: usize, distinct_slopes: bool, node_budget: u64) -> Result<Vec<LEntry>> {
    l_sequence_for(&prime_points(n_max)?, distinct_slopes, node_budget)
}

/// Prefix sequence for an arbitrary point list.
///
/// Since a cover of `n` points covers the first `n − 1`, and one more line
/// always absorbs point `n`, `L(n−1) <= L(n) <= L(n−1) + 1`. Each step
/// therefore only asks whether `L(n−1)` lines still suffice, seeded with the
/// previous cover plus the new point. `node_budget` applies per prefix. After
/// the first truncated prefix the remaining entries are cheap incremental
/// upper bounds flagged non-optimal.
pub fn l_sequence_for(points: &[PrimePoint], distinct_slopes: bool, node_budget: u64) -> Result<Vec<LEntry>> {
    let mut out = Vec::with_capacity(points.len());
    let mut cover: Option<CoverSolution> = None;
    let mut exact = true;
    let mut lines: Vec<Line> = Vec::new();
    let mut singles: Vec<usize> = Vec::new();

    for n in 1..=points.len() {
        let prefix = &points[..n];
        if !exact {
            extend_heuristic(prefix, &mut lines, &mut singles, distinct_slopes);
            out.push(LEntry {
                n,
                size: lines.len() + singles.len(),
                optimal: false,
                nodes: 0,
            });
            continue;
        }
        let prev_size = cover.as_ref().map_or(0, |c| c.size);
        let seed = cover.as_ref().map(|c| {
            CoverSolution::assemble(prefix, c.line_set(), distinct_slopes, false)
        });
        let inst = Instance::new(prefix, DEFAULT_PAIR_BUDGET)?;
        let (sol, stats) = exact_on(&inst, prefix, distinct_slopes, node_budget, seed.as_ref(), prev_size);
        out.push(LEntry {
            n,
            size: sol.size,
            optimal: sol.optimal,
            nodes: stats.nodes,
        });
        if !sol.optimal {
            exact = false;
            lines = sol.line_set();
            let pos: std::collections::HashMap<u64, usize> =
                prefix.iter().enumerate().map(|(i, p)| (p.index, i)).collect();
            singles = sol.singletons.iter().map(|s| pos[s]).collect();
        }
        cover = Some(sol);
    }
    Ok(out)
}

/// Absorb the last point of `prefix` into a cover of the earlier points:
/// keep it on an existing line, else pair it with a singleton, else add it
/// as a singleton.
fn extend_heuristic(prefix: &[PrimePoint], lines: &mut Vec<Line>, singles: &mut Vec<usize>, distinct: bool) {
    let new = prefix.len() - 1;
    let q = prefix[new].coords();
    if lines.iter().any(|l| l.contains(q)) {
        return;
    }
    for (k, &s) in singles.iter().enumerate() {
        let line = line_through(prefix[s].coords(), q).expect("distinct points");
        if distinct && lines.iter().any(|l| l.slope() == line.slope()) {
            continue;
        }
        lines.push(line);
        singles.remove(k);
        // other singletons may now lie on the new line
        singles.retain(|&o| !line.contains(prefix[o].coords()));
        return;
    }
    singles.push(new);
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AwkwardPrime {
    pub index: usize,
    pub prime: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AwkwardReport {
    pub n_max: usize,
    pub primes: Vec<AwkwardPrime>,
    /// Partial sum of reciprocals of the listed primes.
    pub reciprocal_sum: f64,
}

/// Primes `p_j`, `j <= n_max`, with `L(j) > L(j−1)` where `L(0) = 0`.
///
/// Refuses unless every `L(j)` was certified optimal.
pub fn awkward_primes(n_max: usize, node_budget: u64) -> Result<AwkwardReport> {
    let points = prime_points(n_max)?;
    let seq = l_sequence_for(&points, false, node_budget)?;
    awkward_from_sequence(&points, &seq)
}

pub fn awkward_from_sequence(points: &[PrimePoint], seq: &[LEntry]) -> Result<AwkwardReport> {
    if let Some(bad) = seq.iter().find(|e| !e.optimal) {
        return Err(Error::domain(format!(
            "L({}) is not certified optimal; awkwardness needs exact values",
            bad.n
        )));
    }
    let mut prev = 0usize;
    let mut primes = Vec::new();
    for (e, p) in seq.iter().zip(points) {
        if e.size > prev {
            primes.push(AwkwardPrime {
                index: e.n,
                prime: p.value,
            });
        }
        prev = e.size;
    }
    // smallest terms last keeps the partial sum accurate
    let reciprocal_sum = primes.iter().rev().map(|a| 1.0 / a.prime as f64).sum();
    Ok(AwkwardReport {
        n_max: seq.len(),
        primes,
        reciprocal_sum,
    })
}
