//! Parallelogram line covers of the inverse prime points over one interval
//! `(e^k, e^{k+1}]`, cut into Farey cells.
//!
//! A Farey pair `a/b < a'/b'` gives the cell `I = (u, u']` with
//! `u = e^{k+a/b}` and `u' = e^{k+a'/b'}`. The inverse points `(p_n, n)` with
//! `p_n ∈ I` lie close to the tangent of `li` at one endpoint, whose slope is
//! `b/(bk+a)` (or `b'/(b'k+a')`). The lattice lines `(bk+a)y − bx = C` parallel
//! to that tangent, for the integers `C` inside a parallelogram of half-height
//! `w` around it, cover every point of the cell that the parallelogram holds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::farey::{farey_pairs, FareyPair};
use crate::error::{Error, Result};
use crate::geometry::Line;
use crate::primes::{li, PrimeTable, RemainderModel};

/// Log-scale distance within which a prime is too close to a cell edge to
/// be placed by floating point.
pub const LOG_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WPolicy {
    /// `w = |I|² / (u log² u)`.
    Analytic,
    /// `w = 2·max_I |π − li| + 1 + max_I |ℓ − li|`, with `ℓ` the tangent the
    /// parallelogram is built on.
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parallelogram {
    pub u: f64,
    pub u_next: f64,
    /// Slope `slope_num / slope_den` in inverse coordinates.
    pub slope_num: i64,
    pub slope_den: i64,
    pub half_height: f64,
    /// `li` at the endpoint the slanted sides are anchored to.
    pub anchor: f64,
    /// That endpoint, `u` or `u_next`.
    pub anchor_x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FareyCell {
    pub pair: FareyPair,
    pub parallelogram: Parallelogram,
    /// `u' − u` by subtraction.
    pub interval_len: f64,
    /// `u·(e^{1/bb'} − 1)`.
    pub interval_len_alt: f64,
    pub c_min: i64,
    pub c_max: i64,
    pub points: usize,
    pub covered: usize,
}

impl FareyCell {
    pub fn interval_rel_diff(&self) -> f64 {
        ((self.interval_len - self.interval_len_alt) / self.interval_len_alt).abs()
    }

    /// `C = m·n − s·p` for the cell's line family `m·y − s·x = C`.
    pub fn c_of(&self, index: u64, prime: u64) -> i64 {
        let pg = &self.parallelogram;
        (pg.slope_den as i128 * index as i128 - pg.slope_num as i128 * prime as i128) as i64
    }

    pub fn line(&self, c: i64) -> Line {
        let pg = &self.parallelogram;
        Line::new(-pg.slope_num, pg.slope_den, c).expect("coprime slope")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FareyCoverReport {
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u64,
    pub w_policy: WPolicy,
    pub lines: Vec<Line>,
    pub covered: usize,
    /// Indices `n` of inverse points `(p_n, n)` left outside every parallelogram.
    pub uncovered: Vec<u64>,
    /// `e^{3k/4} R(e^k)^{1/4} / k^{1/2}`.
    pub predicted_count: f64,
    /// `lines.len() / predicted_count`.
    pub ratio: f64,
    pub cells: Vec<FareyCell>,
}

impl FareyCoverReport {
    /// The emitted line assigned to `(prime, index)`, if the point lies in the
    /// covered range and inside its cell's parallelogram.
    pub fn line_for(&self, index: u64, prime: u64) -> Option<Line> {
        let lp = (prime as f64).ln();
        let k = self.k as f64;
        let cell = self.cells.iter().find(|c| {
            let lo = k + c.pair.a as f64 / c.pair.b as f64;
            let hi = k + c.pair.a_next as f64 / c.pair.b_next as f64;
            lp > lo && lp <= hi
        })?;
        let c = cell.c_of(index, prime);
        (cell.c_min..=cell.c_max).contains(&c).then(|| cell.line(c))
    }

    pub fn max_interval_rel_diff(&self) -> f64 {
        self.cells.iter().map(FareyCell::interval_rel_diff).fold(0.0, f64::max)
    }
}

/// `⌊(e^k / (8 R(e^{k+1}) k²))^{1/4}⌋`; zero is a legitimate answer for small `k`.
pub fn farey_level(k: u32, model: &RemainderModel<f64>) -> Result<u64> {
    if k < 2 {
        return Err(Error::domain("farey_level needs k >= 2"));
    }
    let kf = k as f64;
    let r = model.bound((kf + 1.0).exp())?;
    let v = (kf.exp() / (8.0 * r * kf * kf)).powf(0.25);
    Ok(v.floor() as u64)
}

/// Cover `(e^k, e^{k+1}]` and report coverage. Sieves up to `e^{k+1}`.
pub fn farey_cover(
    k: u32,
    model: &RemainderModel<f64>,
    w_policy: WPolicy,
    q_override: Option<u64>,
) -> Result<FareyCoverReport> {
    let table = PrimeTable::upto(((k as f64) + 1.0).exp().ceil() as u64 + 1)?;
    farey_cover_with(k, model, w_policy, q_override, &table)
}

pub fn farey_cover_with(
    k: u32,
    model: &RemainderModel<f64>,
    w_policy: WPolicy,
    q_override: Option<u64>,
    table: &PrimeTable,
) -> Result<FareyCoverReport> {
    let level = farey_level(k, model)?;
    let q = match (q_override, w_policy) {
        (Some(0), _) => return Err(Error::domain("Q override must be at least 1")),
        (Some(q), _) => q,
        (None, WPolicy::Empirical) => level.max(1),
        (None, WPolicy::Analytic) if level == 0 => {
            return Err(Error::domain(format!(
                "farey_level({k}) = 0 for model {}: the construction needs larger k; \
                 pass a Q override or use the empirical policy",
                model.label()
            )))
        }
        (None, WPolicy::Analytic) => level,
    };
    let kf = k as f64;
    let top = (kf + 1.0).exp();
    if (table.limit() as f64) < top {
        return Err(Error::domain(format!(
            "prime table reaches {} but the interval ends at {top}",
            table.limit()
        )));
    }
    let pairs = farey_pairs(q)?;
    let edges: Vec<f64> = std::iter::once(kf)
        .chain(pairs.iter().map(|p| kf + p.a_next as f64 / p.b_next as f64))
        .collect();

    // place every prime of the interval in its cell
    let primes = table.primes();
    let lo = primes.partition_point(|&p| (p as f64) < kf.exp().floor());
    let hi = primes.partition_point(|&p| (p as f64) <= top.ceil());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for i in lo..hi {
        let lp = (primes[i] as f64).ln();
        let j = edges.partition_point(|&t| t < lp);
        let near = [j.wrapping_sub(1), j]
            .into_iter()
            .filter_map(|e| edges.get(e))
            .any(|&t| (lp - t).abs() < LOG_GUARD);
        if near {
            return Err(Error::domain(format!(
                "prime {} lies within {LOG_GUARD} of a cell edge in log scale",
                primes[i]
            )));
        }
        if j == 0 || j == edges.len() {
            continue;
        }
        members[j - 1].push(i);
    }

    let cells: Vec<(FareyCell, Vec<Line>, Vec<u64>)> = pairs
        .par_iter()
        .zip(members.par_iter())
        .map(|(pair, idx)| build_cell(k, q, pair, idx, table, w_policy))
        .collect::<Result<_>>()?;

    let predicted_count = (0.75 * kf).exp() * model.bound(kf.exp())?.powf(0.25) / kf.sqrt();
    let mut lines = Vec::new();
    let mut uncovered = Vec::new();
    let mut covered = 0;
    let mut out_cells = Vec::with_capacity(cells.len());
    for (cell, l, u) in cells {
        covered += cell.covered;
        lines.extend(l);
        uncovered.extend(u);
        out_cells.push(cell);
    }
    let ratio = lines.len() as f64 / predicted_count;
    Ok(FareyCoverReport {
        k,
        q,
        w_policy,
        lines,
        covered,
        uncovered,
        predicted_count,
        ratio,
        cells: out_cells,
    })
}

fn build_cell(
    k: u32,
    q: u64,
    pair: &FareyPair,
    idx: &[usize],
    table: &PrimeTable,
    policy: WPolicy,
) -> Result<(FareyCell, Vec<Line>, Vec<u64>)> {
    let kf = k as f64;
    let u = (kf + pair.a as f64 / pair.b as f64).exp();
    let u_next = (kf + pair.a_next as f64 / pair.b_next as f64).exp();
    let interval_len = u_next - u;
    let interval_len_alt = u * (1.0 / (pair.b * pair.b_next) as f64).exp_m1();

    let left = pair.b < pair.b_next || q == 1;
    let (sa, sb, anchor_x, far_x) = if left {
        (pair.a, pair.b, u, u_next)
    } else {
        (pair.a_next, pair.b_next, u_next, u)
    };
    let m = sb * k as i64 + sa;
    let anchor = li(anchor_x);
    let half_height = match policy {
        WPolicy::Analytic => interval_len * interval_len / (u * u.ln().powi(2)),
        WPolicy::Empirical => {
            let tangent = anchor + (far_x - anchor_x) * sb as f64 / m as f64;
            let gap = (tangent - li(far_x)).abs();
            2.0 * observed_max(table, u, u_next) + 1.0 + gap
        }
    };
    // C = m·y − sb·x is constant along the slanted sides
    let c0 = m as f64 * anchor - sb as f64 * anchor_x;
    let spread = m as f64 * half_height;
    let c_min = (c0 - spread).ceil() as i64;
    let c_max = (c0 + spread).floor() as i64;

    let mut cell = FareyCell {
        pair: *pair,
        parallelogram: Parallelogram {
            u,
            u_next,
            slope_num: sb,
            slope_den: m,
            half_height,
            anchor,
            anchor_x,
        },
        interval_len,
        interval_len_alt,
        c_min,
        c_max,
        points: idx.len(),
        covered: 0,
    };
    let mut uncovered = Vec::new();
    for &i in idx {
        let c = cell.c_of(i as u64 + 1, table.primes()[i]);
        if (c_min..=c_max).contains(&c) {
            cell.covered += 1;
        } else {
            uncovered.push(i as u64 + 1);
        }
    }
    let lines = (c_min..=c_max).map(|c| cell.line(c)).collect();
    Ok((cell, lines, uncovered))
}

/// `sup |π(x) − li(x)|` over `x ∈ (lo, hi]`, exact from the prime table: on
/// each gap between primes `π` is constant and `li` increasing, so the
/// extremes sit at the gap ends.
fn observed_max(table: &PrimeTable, lo: f64, hi: f64) -> f64 {
    let primes = table.primes();
    let start = primes.partition_point(|&p| (p as f64) <= lo);
    let end = primes.partition_point(|&p| (p as f64) <= hi);
    let mut best = (start as f64 - li(lo)).abs();
    for (i, &p) in primes.iter().enumerate().take(end).skip(start) {
        let lp = li(p as f64);
        best = best.max((i as f64 - lp).abs()).max((i as f64 + 1.0 - lp).abs());
    }
    best.max((end as f64 - li(hi)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::line_contains;
    use crate::primes::empirical_model;
    use std::collections::HashSet;

    fn check_lines(r: &FareyCoverReport, table: &PrimeTable) {
        let emitted: HashSet<Line> = r.lines.iter().copied().collect();
        assert!(r.lines.iter().all(Line::is_canonical));
        let kf = r.k as f64;
        let mut total = 0;
        for (i, &p) in table.primes().iter().enumerate() {
            let lp = (p as f64).ln();
            if !(lp > kf && lp <= kf + 1.0) {
                continue;
            }
            total += 1;
            let n = i as u64 + 1;
            match r.line_for(n, p) {
                Some(l) => {
                    assert!(line_contains(&l, (p as i64, n as i64)));
                    assert!(emitted.contains(&l));
                }
                None => assert!(r.uncovered.contains(&n)),
            }
        }
        assert_eq!(r.covered + r.uncovered.len(), total);
    }

    #[test]
    fn levels() {
        let rh = RemainderModel::RiemannHypothesis;
        assert_eq!(farey_level(10, &rh).unwrap(), 0);
        let d33 = RemainderModel::empirical(vec![(13f64.exp() + 1.0, 33.0)]).unwrap();
        assert_eq!(farey_level(12, &d33).unwrap(), 1);
        let tiny = RemainderModel::custom_power(1e-9, 1e-6).unwrap();
        let a = farey_level(20, &tiny).unwrap() as f64;
        let b = farey_level(24, &tiny).unwrap() as f64;
        assert!(b / a > 2.2 && b / a < 3.2, "{a} {b}");
        assert!(farey_level(1, &rh).is_err());
    }

    #[test]
    fn empirical_cover_has_no_gaps() {
        let model = empirical_model(11).unwrap();
        let table = PrimeTable::upto(11f64.exp().ceil() as u64 + 1).unwrap();
        for (k, q) in [(8, None), (10, None), (10, Some(3))] {
            let r = farey_cover_with(k, &model, WPolicy::Empirical, q, &table).unwrap();
            assert!(r.uncovered.is_empty(), "k = {k}: {:?}", r.uncovered);
            assert!(r.covered > 0);
            assert!(r.max_interval_rel_diff() < 1e-12);
            check_lines(&r, &table);
        }
    }

    #[test]
    fn single_cell_uses_slope_one_over_k() {
        let model = empirical_model(9).unwrap();
        let r = farey_cover(8, &model, WPolicy::Empirical, Some(1)).unwrap();
        assert_eq!(r.cells.len(), 1);
        let pg = r.cells[0].parallelogram;
        assert_eq!((pg.slope_num, pg.slope_den), (1, 8));
        assert!(r.lines.iter().all(|l| (l.a, l.b) == (1, -8)));
        assert!(r.uncovered.is_empty());
    }

    #[test]
    fn analytic_policy_reports_rather_than_drops() {
        let model = empirical_model(11).unwrap();
        let table = PrimeTable::upto(11f64.exp().ceil() as u64 + 1).unwrap();
        assert!(farey_cover_with(10, &RemainderModel::RiemannHypothesis, WPolicy::Analytic, None, &table).is_err());
        let r = farey_cover_with(10, &model, WPolicy::Analytic, Some(20), &table).unwrap();
        assert!(!r.uncovered.is_empty());
        check_lines(&r, &table);
    }

    #[test]
    fn slope_side_follows_smaller_denominator() {
        let model = empirical_model(9).unwrap();
        let r = farey_cover(8, &model, WPolicy::Empirical, Some(4)).unwrap();
        for c in &r.cells {
            let p = c.pair;
            let pg = c.parallelogram;
            let (sa, sb) = if p.b < p.b_next { (p.a, p.b) } else { (p.a_next, p.b_next) };
            assert_ne!(p.b, p.b_next);
            assert_eq!((pg.slope_num, pg.slope_den), (sb, sb * 8 + sa));
        }
        assert!(r.uncovered.is_empty());
    }
}
