use serde::{Deserialize, Serialize};

use crate::geometry::{Line, LineFamilyEntry, PrimePoint};

/// How one point is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Covering {
    Line(Line),
    Singleton,
}

/// A line cover of the first `n` points.
///
/// `lines` carry the points assigned to them; a point on several chosen lines
/// is assigned to the least one in canonical order. Points on no chosen line
/// are listed in `singletons`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub n: usize,
    pub size: usize,
    pub distinct_slopes: bool,
    pub optimal: bool,
    /// The search stopped on its node budget; `size` is an upper bound only.
    #[serde(default)]
    pub truncated: bool,
    pub lines: Vec<LineFamilyEntry>,
    pub singletons: Vec<u64>,
}

impl CoverSolution {
    /// Assemble a cover from chosen lines (any order) and singleton indices,
    /// assigning every point to the least chosen line through it.
    pub fn assemble(
        points: &[PrimePoint],
        mut chosen: Vec<Line>,
        distinct_slopes: bool,
        optimal: bool,
    ) -> Self {
        chosen.sort_unstable();
        chosen.dedup();
        let mut members: Vec<Vec<u64>> = vec![Vec::new(); chosen.len()];
        let mut singletons = Vec::new();
        for p in points {
            match chosen.iter().position(|l| l.contains(p.coords())) {
                Some(i) => members[i].push(p.index),
                None => singletons.push(p.index),
            }
        }
        let lines: Vec<LineFamilyEntry> = chosen
            .into_iter()
            .zip(members)
            .map(|(l, m)| LineFamilyEntry::new(l, m))
            .collect();
        CoverSolution {
            n: points.len(),
            size: lines.len() + singletons.len(),
            distinct_slopes,
            optimal,
            truncated: false,
            lines,
            singletons,
        }
    }

    /// Per-point covering, in the order of the point indices `1..=n`.
    pub fn assignment(&self) -> Vec<(u64, Covering)> {
        let mut out: Vec<(u64, Covering)> = self
            .lines
            .iter()
            .flat_map(|e| e.members.iter().map(move |&m| (m, Covering::Line(e.line))))
            .chain(self.singletons.iter().map(|&s| (s, Covering::Singleton)))
            .collect();
        out.sort_by_key(|&(i, _)| i);
        out
    }

    pub fn line_set(&self) -> Vec<Line> {
        self.lines.iter().map(|e| e.line).collect()
    }
}
