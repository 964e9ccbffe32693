//! Candidate lines for covering a point set.
//!
//! Only maximal collinear subsets of size >= 2 are kept: replacing a covering
//! line by the maximal line through the same points never uncovers anything.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::Result;
use crate::geometry::{collect_lines_with, Line, PrimePoint};

#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub line: Line,
    /// Positions into the point slice.
    pub members: Vec<u32>,
    pub slope: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Instance {
    pub n: usize,
    /// Sorted by canonical line.
    pub lines: Vec<Candidate>,
    /// Point position → ids of lines through it, increasing.
    pub through: Vec<Vec<u32>>,
    /// Slope class → ids of lines with that slope.
    pub by_slope: Vec<Vec<u32>>,
}

impl Instance {
    pub fn new(points: &[PrimePoint], pair_budget: u128) -> Result<Self> {
        let entries = collect_lines_with(points, 2, pair_budget)?;
        let pos: std::collections::HashMap<u64, u32> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.index, i as u32))
            .collect();
        let mut slope_ids: BTreeMap<Option<Ratio<i64>>, u32> = BTreeMap::new();
        for e in &entries {
            let next = slope_ids.len() as u32;
            slope_ids.entry(e.line.slope()).or_insert(next);
        }
        let mut through = vec![Vec::new(); points.len()];
        let mut by_slope = vec![Vec::new(); slope_ids.len()];
        let lines: Vec<Candidate> = entries
            .into_iter()
            .enumerate()
            .map(|(id, e)| {
                let members: Vec<u32> = e.members.iter().map(|m| pos[m]).collect();
                for &m in &members {
                    through[m as usize].push(id as u32);
                }
                let slope = slope_ids[&e.line.slope()];
                by_slope[slope as usize].push(id as u32);
                Candidate {
                    line: e.line,
                    members,
                    slope,
                }
            })
            .collect();
        Ok(Instance {
            n: points.len(),
            lines,
            through,
            by_slope,
        })
    }
}
