//! Exact minimum line cover by depth-first branch and bound.
//!
//! * Branch on the uncovered point with the fewest active candidate lines
//!   (active: not banned, at least two uncovered members).
//! * Try its lines by uncovered count, then canonical order. After a line's
//!   subtree is exhausted it is banned for the remaining siblings, so every set
//!   of lines is visited at most once.
//! * Without the slope constraint a singleton is only used for a point with no
//!   active line: any active line through the point dominates it. With the
//!   constraint the singleton is the last branch.
//! * Bound: points without an active line need one slot each; the rest must fit
//!   in the largest uncovered counts of the remaining slots.

use serde::{Deserialize, Serialize};

use super::greedy::greedy_on;
use super::instance::Instance;
use super::solution::CoverSolution;
use crate::error::Result;
use crate::geometry::{Line, PrimePoint, DEFAULT_PAIR_BUDGET};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub truncated: bool,
}

/// `L(n)` (or `L_np(n)` with `distinct_slopes`) with an optimal cover.
///
/// On budget exhaustion the best cover found is returned with
/// `optimal = false` and `truncated = true`.
pub fn exact_cover(points: &[PrimePoint], distinct_slopes: bool, node_budget: u64) -> Result<CoverSolution> {
    Ok(exact_cover_from(points, distinct_slopes, node_budget, None, 0)?.0)
}

/// [`exact_cover`] seeded with a known cover and a known lower bound.
///
/// `incumbent` must be a valid cover of `points` (respecting the slope
/// constraint when requested). The search stops as soon as a cover of size
/// `lower_bound` is found.
pub fn exact_cover_from(
    points: &[PrimePoint],
    distinct_slopes: bool,
    node_budget: u64,
    incumbent: Option<&CoverSolution>,
    lower_bound: usize,
) -> Result<(CoverSolution, SearchStats)> {
    let inst = Instance::new(points, DEFAULT_PAIR_BUDGET)?;
    Ok(exact_on(&inst, points, distinct_slopes, node_budget, incumbent, lower_bound))
}

pub(crate) fn exact_on(
    inst: &Instance,
    points: &[PrimePoint],
    distinct_slopes: bool,
    node_budget: u64,
    incumbent: Option<&CoverSolution>,
    lower_bound: usize,
) -> (CoverSolution, SearchStats) {
    let seed = match incumbent {
        Some(s) => s.clone(),
        None => greedy_on(inst, points, distinct_slopes),
    };
    let mut search = Search::new(inst, distinct_slopes, node_budget, seed.size, lower_bound.max(1));
    if points.is_empty() {
        let mut s = seed;
        s.optimal = true;
        return (s, SearchStats { nodes: 0, truncated: false });
    }
    if seed.size > search.lower {
        search.dfs();
    }
    let stats = SearchStats {
        nodes: search.nodes,
        truncated: search.truncated,
    };
    let mut solution = match search.best {
        Some(choices) => {
            let lines: Vec<Line> = choices
                .iter()
                .filter_map(|c| match c {
                    Choice::Line(id) => Some(inst.lines[*id as usize].line),
                    Choice::Singleton(_) => None,
                })
                .collect();
            CoverSolution::assemble(points, lines, distinct_slopes, false)
        }
        None => seed,
    };
    solution.distinct_slopes = distinct_slopes;
    solution.optimal = !stats.truncated;
    solution.truncated = stats.truncated;
    (solution, stats)
}

#[derive(Debug, Clone, Copy)]
enum Choice {
    Line(u32),
    Singleton(u32),
}

struct Search<'a> {
    inst: &'a Instance,
    distinct: bool,
    cover_cnt: Vec<u32>,
    unc: Vec<u32>,
    ban: Vec<u32>,
    /// Active lines through each point.
    cand: Vec<u32>,
    /// `hist[c]`: active lines with exactly `c` uncovered members.
    hist: Vec<u32>,
    uncovered: usize,
    chosen: Vec<Choice>,
    best_size: usize,
    best: Option<Vec<Choice>>,
    lower: usize,
    nodes: u64,
    budget: u64,
    truncated: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, distinct: bool, budget: u64, best_size: usize, lower: usize) -> Self {
        let max_len = inst.lines.iter().map(|l| l.members.len()).max().unwrap_or(0);
        let mut s = Search {
            inst,
            distinct,
            cover_cnt: vec![0; inst.n],
            unc: inst.lines.iter().map(|l| l.members.len() as u32).collect(),
            ban: vec![0; inst.lines.len()],
            cand: vec![0; inst.n],
            hist: vec![0; max_len + 1],
            uncovered: inst.n,
            chosen: Vec::new(),
            best_size,
            best: None,
            lower,
            nodes: 0,
            budget,
            truncated: false,
            done: false,
        };
        for id in 0..inst.lines.len() {
            s.activate(id);
        }
        s
    }

    #[inline]
    fn active(&self, id: usize) -> bool {
        self.ban[id] == 0 && self.unc[id] >= 2
    }

    fn activate(&mut self, id: usize) {
        self.hist[self.unc[id] as usize] += 1;
        for &m in &self.inst.lines[id].members {
            self.cand[m as usize] += 1;
        }
    }

    fn deactivate(&mut self, id: usize) {
        self.hist[self.unc[id] as usize] -= 1;
        for &m in &self.inst.lines[id].members {
            self.cand[m as usize] -= 1;
        }
    }

    fn cover_point(&mut self, p: usize) {
        self.cover_cnt[p] += 1;
        if self.cover_cnt[p] > 1 {
            return;
        }
        self.uncovered -= 1;
        for &id in &self.inst.through[p] {
            let id = id as usize;
            if self.active(id) {
                self.hist[self.unc[id] as usize] -= 1;
                self.unc[id] -= 1;
                if self.unc[id] >= 2 {
                    self.hist[self.unc[id] as usize] += 1;
                } else {
                    for &m in &self.inst.lines[id].members {
                        self.cand[m as usize] -= 1;
                    }
                }
            } else {
                self.unc[id] -= 1;
            }
        }
    }

    fn uncover_point(&mut self, p: usize) {
        self.cover_cnt[p] -= 1;
        if self.cover_cnt[p] > 0 {
            return;
        }
        self.uncovered += 1;
        for &id in self.inst.through[p].iter().rev() {
            let id = id as usize;
            let was = self.active(id);
            if was {
                self.hist[self.unc[id] as usize] -= 1;
            }
            self.unc[id] += 1;
            if was {
                self.hist[self.unc[id] as usize] += 1;
            } else if self.active(id) {
                self.activate(id);
            }
        }
    }

    fn ban_line(&mut self, id: usize) {
        if self.active(id) {
            self.deactivate(id);
        }
        self.ban[id] += 1;
    }

    fn unban_line(&mut self, id: usize) {
        self.ban[id] -= 1;
        if self.active(id) {
            self.activate(id);
        }
    }

    fn choose(&mut self, choice: Choice) {
        match choice {
            Choice::Singleton(p) => self.cover_point(p as usize),
            Choice::Line(id) => {
                let inst = self.inst;
                let line = &inst.lines[id as usize];
                for &m in &line.members {
                    self.cover_point(m as usize);
                }
                if self.distinct {
                    for &other in &inst.by_slope[line.slope as usize] {
                        if other != id {
                            self.ban_line(other as usize);
                        }
                    }
                }
            }
        }
        self.chosen.push(choice);
    }

    fn unchoose(&mut self) {
        let choice = self.chosen.pop().expect("nonempty choice stack");
        match choice {
            Choice::Singleton(p) => self.uncover_point(p as usize),
            Choice::Line(id) => {
                let inst = self.inst;
                let line = &inst.lines[id as usize];
                if self.distinct {
                    for &other in inst.by_slope[line.slope as usize].iter().rev() {
                        if other != id {
                            self.unban_line(other as usize);
                        }
                    }
                }
                for &m in line.members.iter().rev() {
                    self.uncover_point(m as usize);
                }
            }
        }
    }

    /// Can `slots` more choices cover everything, ignoring overlaps?
    fn feasible(&self, slots: usize, isolated: usize) -> bool {
        if isolated > slots {
            return false;
        }
        let mut left = slots - isolated;
        let need = self.uncovered - isolated;
        let mut reach = 0usize;
        for c in (2..self.hist.len()).rev() {
            if left == 0 || reach >= need {
                break;
            }
            let take = (self.hist[c] as usize).min(left);
            reach += take * c;
            left -= take;
        }
        // leftover slots cover one point each
        reach + left >= need
    }

    fn dfs(&mut self) {
        if self.done {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            self.done = true;
            return;
        }
        let depth = self.chosen.len();
        if self.uncovered == 0 {
            self.best_size = depth;
            self.best = Some(self.chosen.clone());
            if self.best_size <= self.lower {
                self.done = true;
            }
            return;
        }
        if depth + 1 >= self.best_size {
            return;
        }
        let slots = self.best_size - 1 - depth;

        let mut pick = usize::MAX;
        let mut pick_cand = u32::MAX;
        let mut isolated = 0usize;
        for p in 0..self.inst.n {
            if self.cover_cnt[p] == 0 {
                let c = self.cand[p];
                if c == 0 {
                    isolated += 1;
                }
                if c < pick_cand {
                    pick_cand = c;
                    pick = p;
                }
            }
        }
        if !self.feasible(slots, isolated) {
            return;
        }

        if pick_cand == 0 {
            self.choose(Choice::Singleton(pick as u32));
            self.dfs();
            self.unchoose();
            return;
        }

        let inst = self.inst;
        let mut options: Vec<u32> = inst.through[pick]
            .iter()
            .copied()
            .filter(|&id| self.active(id as usize))
            .collect();
        options.sort_by_key(|&id| (std::cmp::Reverse(self.unc[id as usize]), id));

        let mut banned = Vec::with_capacity(options.len());
        for id in options {
            if self.done {
                break;
            }
            self.choose(Choice::Line(id));
            self.dfs();
            self.unchoose();
            self.ban_line(id as usize);
            banned.push(id);
        }
        if self.distinct && !self.done {
            self.choose(Choice::Singleton(pick as u32));
            self.dfs();
            self.unchoose();
        }
        for id in banned.into_iter().rev() {
            self.unban_line(id as usize);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify::verify_cover;
    use crate::geometry::{prime_points, Line};

    #[test]
    fn small_values() {
        let l = |n| exact_cover(&prime_points(n).unwrap(), false, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(l(1).size, 1);
        assert_eq!(l(2).size, 1);
        assert_eq!(l(3).size, 2);
        let four = l(4);
        assert_eq!(four.size, 2);
        assert_eq!(four.lines[0].line, Line::new(2, -1, 1).unwrap());
        assert_eq!(four.singletons, vec![1]);
        let s24 = l(24);
        assert_eq!(s24.size, 5);
        assert!(s24.optimal && !s24.truncated);
        assert!(verify_cover(&prime_points(24).unwrap(), &s24, None).valid);
    }

    #[test]
    fn empty_input() {
        let s = exact_cover(&[], false, 10).unwrap();
        assert_eq!(s.size, 0);
        assert!(s.optimal);
    }

    #[test]
    fn truncation_is_reported() {
        let pts = prime_points(60).unwrap();
        let s = exact_cover(&pts, false, 5).unwrap();
        assert!(s.truncated && !s.optimal);
        assert!(verify_cover(&pts, &s, None).valid);
    }

    #[test]
    fn distinct_slopes_never_below_plain() {
        for n in [5usize, 10, 16, 24] {
            let pts = prime_points(n).unwrap();
            let plain = exact_cover(&pts, false, DEFAULT_NODE_BUDGET).unwrap();
            let np = exact_cover(&pts, true, DEFAULT_NODE_BUDGET).unwrap();
            assert!(np.size >= plain.size, "n = {n}");
            assert!(np.distinct_slopes);
            assert!(verify_cover(&pts, &np, None).valid);
        }
    }
}
