//! Collinear subsets of a point set by all-pairs direction grouping.
//!
//! For an anchor point every other point is reduced to a primitive direction;
//! points sharing a direction lie on one line through the anchor. A line is
//! reported from its first member (in input order) only, so each line appears
//! once without a global hash of all pairs.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::line::{direction, line_through, Lattice, Line};
use super::point::PrimePoint;
use crate::error::{Error, Result};

/// Default cap on the number of unordered pairs examined.
pub const DEFAULT_PAIR_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "EntryRepr", into = "EntryRepr")]
pub struct LineFamilyEntry {
    pub line: Line,
    /// Point indices on the line, increasing.
    pub members: Vec<u64>,
    pub count: usize,
}

/// Wire form `{"A":…,"B":…,"C":…,"members":[…]}`; `count` is implied.
#[derive(Serialize, Deserialize)]
struct EntryRepr {
    #[serde(flatten)]
    line: Line,
    members: Vec<u64>,
}

impl From<EntryRepr> for LineFamilyEntry {
    fn from(r: EntryRepr) -> Self {
        LineFamilyEntry::new(r.line, r.members)
    }
}

impl From<LineFamilyEntry> for EntryRepr {
    fn from(e: LineFamilyEntry) -> Self {
        EntryRepr {
            line: e.line,
            members: e.members,
        }
    }
}

impl LineFamilyEntry {
    pub fn new(line: Line, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        let count = members.len();
        LineFamilyEntry {
            line,
            members,
            count,
        }
    }
}

/// Result of [`best_line`]. For fewer than two points `line` is `None` and
/// `count` is the number of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestLine {
    pub line: Option<Line>,
    pub count: usize,
}

pub(crate) fn check_pairs(n: usize, budget: u128) -> Result<()> {
    let pairs = n as u128 * (n as u128).saturating_sub(1) / 2;
    if pairs > budget {
        return Err(Error::Budget {
            what: "point pairs",
            needed: pairs,
            budget,
        });
    }
    Ok(())
}

/// Group `others` by direction seen from `anchor`; returns runs of positions.
fn direction_runs(anchor: Lattice, others: impl Iterator<Item = (usize, Lattice)>) -> Vec<(usize, Vec<usize>)> {
    let mut dirs: Vec<((i64, i64), usize)> = others
        .map(|(j, q)| (direction(q.0 - anchor.0, q.1 - anchor.1), j))
        .collect();
    dirs.sort_unstable();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < dirs.len() {
        let mut j = i + 1;
        while j < dirs.len() && dirs[j].0 == dirs[i].0 {
            j += 1;
        }
        runs.push((dirs[i].1, dirs[i..j].iter().map(|d| d.1).collect()));
        i = j;
    }
    runs
}

/// Every line carrying at least `min_size` of `points`, each exactly once,
/// sorted by line.
pub fn collect_lines(points: &[PrimePoint], min_size: usize) -> Result<Vec<LineFamilyEntry>> {
    collect_lines_with(points, min_size, DEFAULT_PAIR_BUDGET)
}

pub fn collect_lines_with(
    points: &[PrimePoint],
    min_size: usize,
    pair_budget: u128,
) -> Result<Vec<LineFamilyEntry>> {
    check_pairs(points.len(), pair_budget)?;
    let coords: Vec<Lattice> = points.iter().map(PrimePoint::coords).collect();
    let min_size = min_size.max(2);
    let per_anchor: Vec<Vec<LineFamilyEntry>> = (0..coords.len())
        .into_par_iter()
        .map(|i| {
            let others = coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, &q)| (j, q));
            direction_runs(coords[i], others)
                .into_iter()
                .filter(|(_, run)| run.len() + 1 >= min_size && run.iter().all(|&j| j > i))
                .map(|(first, run)| {
                    let line = line_through(coords[i], coords[first]).expect("distinct points");
                    let mut members: Vec<u64> = run.iter().map(|&j| points[j].index).collect();
                    members.push(points[i].index);
                    LineFamilyEntry::new(line, members)
                })
                .collect()
        })
        .collect();
    let mut out: Vec<LineFamilyEntry> = per_anchor.into_iter().flatten().collect();
    out.sort_unstable_by_key(|a| a.line);
    Ok(out)
}

/// `B(n)` for the given points with its lexicographically least witness line.
pub fn best_line(points: &[PrimePoint]) -> Result<BestLine> {
    best_line_with(points, DEFAULT_PAIR_BUDGET)
}

pub fn best_line_with(points: &[PrimePoint], pair_budget: u128) -> Result<BestLine> {
    if points.len() < 2 {
        return Ok(BestLine {
            line: None,
            count: points.len(),
        });
    }
    check_pairs(points.len(), pair_budget)?;
    let coords: Vec<Lattice> = points.iter().map(PrimePoint::coords).collect();
    let best = (0..coords.len() - 1)
        .into_par_iter()
        .map(|i| {
            // only later points: a line is counted in full at its first member
            let others = coords[i + 1..]
                .iter()
                .enumerate()
                .map(|(d, &q)| (i + 1 + d, q));
            let runs = direction_runs(coords[i], others);
            let top = runs.iter().map(|r| r.1.len()).max().unwrap_or(0);
            let line = runs
                .iter()
                .filter(|r| r.1.len() == top)
                .map(|r| line_through(coords[i], coords[r.0]).expect("distinct points"))
                .min()
                .expect("at least one later point");
            (top + 1, line)
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => (a.0, a.1.min(b.1)),
        })
        .expect("n >= 2");
    Ok(BestLine {
        line: Some(best.1),
        count: best.0,
    })
}

/// For each point, the largest number of `points` on a single line through
/// it (1 for an isolated point).
pub fn max_multiplicity(points: &[PrimePoint], pair_budget: u128) -> Result<Vec<usize>> {
    check_pairs(points.len(), pair_budget)?;
    let coords: Vec<Lattice> = points.iter().map(PrimePoint::coords).collect();
    Ok((0..coords.len())
        .into_par_iter()
        .map(|i| {
            let others = coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, &q)| (j, q));
            direction_runs(coords[i], others)
                .iter()
                .map(|r| r.1.len() + 1)
                .max()
                .unwrap_or(1)
        })
        .collect())
}

/// One row of [`b_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BEntry {
    pub n: usize,
    pub count: usize,
    pub line: Option<Line>,
}

/// `[B(1), ..., B(n)]` for the prefixes of `points`, built incrementally:
/// point `n` only creates or extends lines through itself, so `B(n)` is the
/// larger of `B(n−1)` and one plus the largest direction class seen from it.
/// The witness line is the least canonical line achieving each maximum.
pub fn b_sequence(points: &[PrimePoint]) -> Result<Vec<BEntry>> {
    b_sequence_with(points, DEFAULT_PAIR_BUDGET)
}

pub fn b_sequence_with(points: &[PrimePoint], pair_budget: u128) -> Result<Vec<BEntry>> {
    check_pairs(points.len(), pair_budget)?;
    let coords: Vec<Lattice> = points.iter().map(PrimePoint::coords).collect();
    let mut out = Vec::with_capacity(points.len());
    let mut best = 0usize;
    let mut best_lines: BTreeSet<Line> = BTreeSet::new();
    for n in 0..coords.len() {
        if n == 0 {
            best = 1;
            out.push(BEntry {
                n: 1,
                count: 1,
                line: None,
            });
            continue;
        }
        let others = coords[..n].iter().enumerate().map(|(j, &q)| (j, q));
        let runs = direction_runs(coords[n], others);
        let top = runs.iter().map(|r| r.1.len()).max().unwrap_or(0) + 1;
        let lines_at_top = runs
            .iter()
            .filter(|r| r.1.len() + 1 == top)
            .map(|r| line_through(coords[n], coords[r.0]).expect("distinct points"));
        if top > best {
            best = top;
            best_lines = lines_at_top.collect();
        } else if top == best {
            best_lines.extend(lines_at_top);
        }
        out.push(BEntry {
            n: n + 1,
            count: best,
            line: best_lines.first().copied(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::prime_points;

    /// Lines through pairs, extended by testing every other point.
    fn brute_lines(points: &[PrimePoint], min_size: usize) -> Vec<(Line, Vec<u64>)> {
        let mut seen = BTreeSet::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let l = line_through(points[i].coords(), points[j].coords()).unwrap();
                seen.insert(l);
            }
        }
        seen.into_iter()
            .map(|l| {
                let m: Vec<u64> = points
                    .iter()
                    .filter(|p| l.contains(p.coords()))
                    .map(|p| p.index)
                    .collect();
                (l, m)
            })
            .filter(|(_, m)| m.len() >= min_size)
            .collect()
    }

    #[test]
    fn first_five_have_one_triple() {
        let pts = prime_points(5).unwrap();
        let lines = collect_lines(&pts, 3).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].line, Line::new(2, -1, 1).unwrap());
        assert_eq!(lines[0].members, vec![2, 3, 4]);
        assert_eq!(lines[0].count, 3);
    }

    #[test]
    fn small_prefixes() {
        // (1,2),(2,3),(3,5): slopes 1 and 2, not collinear
        assert!(collect_lines(&prime_points(3).unwrap(), 3).unwrap().is_empty());
        let two = collect_lines(&prime_points(2).unwrap(), 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].count, 2);
    }

    #[test]
    fn matches_brute_force_and_pair_counts() {
        let pts = prime_points(120).unwrap();
        let fast = collect_lines(&pts, 2).unwrap();
        let slow = brute_lines(&pts, 2);
        assert_eq!(fast.len(), slow.len());
        for (f, (l, m)) in fast.iter().zip(&slow) {
            assert_eq!(&f.line, l);
            assert_eq!(&f.members, m);
        }
        // every pair lands on exactly one line
        let pairs: usize = fast.iter().map(|e| e.count * (e.count - 1) / 2).sum();
        assert_eq!(pairs, 120 * 119 / 2);
        for e in &fast {
            let m = e.count * (e.count - 1) / 2;
            let d = 1 + 8 * m;
            let r = (d as f64).sqrt() as usize;
            assert_eq!(r * r, d);
        }
    }

    #[test]
    fn best_line_examples() {
        let b21 = best_line(&prime_points(21).unwrap()).unwrap();
        assert_eq!(b21.count, 8);
        assert_eq!(b21.line, Some(Line::new(4, -1, 11).unwrap()));
        let b5 = best_line(&prime_points(5).unwrap()).unwrap();
        assert_eq!((b5.count, b5.line), (3, Some(Line::new(2, -1, 1).unwrap())));
        assert_eq!(best_line(&prime_points(2).unwrap()).unwrap().count, 2);
        let b1 = best_line(&prime_points(1).unwrap()).unwrap();
        assert_eq!((b1.count, b1.line), (1, None));
    }

    #[test]
    fn sequence_examples() {
        let counts = |n| -> Vec<usize> {
            b_sequence(&prime_points(n).unwrap())
                .unwrap()
                .iter()
                .map(|e| e.count)
                .collect()
        };
        assert_eq!(counts(3), vec![1, 2, 2]);
        assert_eq!(*counts(5).last().unwrap(), 3);
        assert_eq!(*counts(21).last().unwrap(), 8);
    }

    #[test]
    fn sequence_agrees_with_best_line_per_prefix() {
        let pts = prime_points(150).unwrap();
        let seq = b_sequence(&pts).unwrap();
        for n in [2usize, 3, 7, 24, 60, 99, 150] {
            let b = best_line(&pts[..n]).unwrap();
            assert_eq!(seq[n - 1].count, b.count, "n = {n}");
            assert_eq!(seq[n - 1].line, b.line, "n = {n}");
        }
        for w in seq.windows(2) {
            assert!(w[1].count >= w[0].count && w[1].count <= w[0].count + 1);
        }
    }

    #[test]
    fn budget() {
        let pts = prime_points(100).unwrap();
        assert!(matches!(
            collect_lines_with(&pts, 2, 100),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn serializes_with_capital_keys() {
        let e = LineFamilyEntry::new(Line::new(2, -1, 1).unwrap(), vec![4, 2, 3]);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v, serde_json::json!({"A": 2, "B": -1, "C": 1, "members": [2, 3, 4]}));
        let back: LineFamilyEntry = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
