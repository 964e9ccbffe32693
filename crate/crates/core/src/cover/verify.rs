use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::solution::CoverSolution;
use crate::geometry::PrimePoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub valid: bool,
    pub first_violation: Option<String>,
}

impl CoverReport {
    fn ok() -> Self {
        CoverReport {
            valid: true,
            first_violation: None,
        }
    }

    fn fail(msg: String) -> Self {
        CoverReport {
            valid: false,
            first_violation: Some(msg),
        }
    }
}

/// Check every [`CoverSolution`] invariant against `points` by direct
/// evaluation. `certificate` is a known optimum; an `optimal` solution whose
/// size differs from it is rejected.
pub fn verify_cover(points: &[PrimePoint], solution: &CoverSolution, certificate: Option<usize>) -> CoverReport {
    if solution.n != points.len() {
        return CoverReport::fail(format!(
            "solution is for n = {}, got {} points",
            solution.n,
            points.len()
        ));
    }
    let by_index: HashMap<u64, &PrimePoint> = points.iter().map(|p| (p.index, p)).collect();
    let mut assigned: HashMap<u64, usize> = HashMap::new();
    for entry in &solution.lines {
        if !entry.line.is_canonical() {
            return CoverReport::fail(format!("line {} is not canonical", entry.line));
        }
        for &m in &entry.members {
            let Some(p) = by_index.get(&m) else {
                return CoverReport::fail(format!("line {} lists unknown point {m}", entry.line));
            };
            if !entry.line.contains(p.coords()) {
                return CoverReport::fail(format!(
                    "point {m} {:?} is not on line {}",
                    p.coords(),
                    entry.line
                ));
            }
            *assigned.entry(m).or_default() += 1;
        }
    }
    for &s in &solution.singletons {
        if !by_index.contains_key(&s) {
            return CoverReport::fail(format!("unknown singleton {s}"));
        }
        *assigned.entry(s).or_default() += 1;
    }
    let mut indices: Vec<u64> = points.iter().map(|p| p.index).collect();
    indices.sort_unstable();
    for i in indices {
        match assigned.get(&i) {
            None => return CoverReport::fail(format!("point {i} is not covered")),
            Some(&c) if c > 1 => return CoverReport::fail(format!("point {i} is assigned {c} times")),
            _ => {}
        }
    }
    let size = solution.lines.len() + solution.singletons.len();
    if size != solution.size {
        return CoverReport::fail(format!("size {} but {} coverings listed", solution.size, size));
    }
    if solution.distinct_slopes {
        let mut slopes = BTreeSet::new();
        for e in &solution.lines {
            if !slopes.insert(e.line.slope()) {
                return CoverReport::fail(format!("slope of {} repeats", e.line));
            }
        }
    }
    if let (true, Some(cert)) = (solution.optimal, certificate) {
        if cert != solution.size {
            return CoverReport::fail(format!(
                "claimed optimal size {} disagrees with certificate {cert}",
                solution.size
            ));
        }
    }
    CoverReport::ok()
}
