use super::instance::Instance;
use super::solution::CoverSolution;
use crate::error::Result;
use crate::geometry::{PrimePoint, DEFAULT_PAIR_BUDGET};

/// Greedy cover: take the line covering the most uncovered points (least
/// canonical line on ties) while that is at least two, then singletons.
///
/// With `distinct_slopes`, a line is only eligible if no chosen line shares
/// its slope.
pub fn greedy_cover(points: &[PrimePoint], distinct_slopes: bool) -> Result<CoverSolution> {
    let inst = Instance::new(points, DEFAULT_PAIR_BUDGET)?;
    Ok(greedy_on(&inst, points, distinct_slopes))
}

pub(crate) fn greedy_on(inst: &Instance, points: &[PrimePoint], distinct_slopes: bool) -> CoverSolution {
    let mut covered = vec![false; inst.n];
    let mut slope_used = vec![false; inst.by_slope.len()];
    let mut chosen = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (id, cand) in inst.lines.iter().enumerate() {
            if distinct_slopes && slope_used[cand.slope as usize] {
                continue;
            }
            let gain = cand.members.iter().filter(|&&m| !covered[m as usize]).count();
            // strict > keeps the least canonical line on ties
            if gain >= 2 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, id));
            }
        }
        let Some((_, id)) = best else { break };
        let cand = &inst.lines[id];
        for &m in &cand.members {
            covered[m as usize] = true;
        }
        slope_used[cand.slope as usize] = true;
        chosen.push(cand.line);
    }
    CoverSolution::assemble(points, chosen, distinct_slopes, false)
}
