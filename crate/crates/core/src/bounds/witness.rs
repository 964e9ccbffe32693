//! Slope-`1/k` witness lines for lower bounds on `B(n)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Line;
use crate::primes::{PrimeTable, RemainderModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u64,
    /// `⌈√(e^k/R(e^k))/k⌉` when it differs from the floor used for `Q`.
    pub q_ceil: Option<u64>,
    /// `(e^k, e^{k+1/Q}]`.
    pub interval: (f64, f64),
    pub line: Line,
    pub count: usize,
    /// Indices `n` of the inverse points `(p_n, n)` on `line`.
    pub members: Vec<u64>,
    /// Primes in the interval.
    pub points: usize,
    /// Distinct slope-`1/k` lines meeting those primes.
    pub groups: usize,
    /// `points / groups`.
    pub mean_per_line: f64,
    /// `π(e^{k+1/Q})`, the prefix length the count bounds `B` for.
    pub prefix: u64,
}

/// `(⌊v⌋, ⌈v⌉)` with `v = √(e^k / R(e^k)) / k`.
pub fn witness_level(k: u32, model: &RemainderModel<f64>) -> Result<(u64, u64)> {
    if k < 1 {
        return Err(Error::domain("witness needs k >= 1"));
    }
    let kf = k as f64;
    let v = (kf.exp() / model.bound(kf.exp())?).sqrt() / kf;
    Ok((v.floor() as u64, v.ceil() as u64))
}

/// The fullest slope-`1/k` line through the inverse prime points of
/// `(e^k, e^{k+1/Q}]`.
pub fn b_witness(k: u32, model: &RemainderModel<f64>, q_override: Option<u64>) -> Result<WitnessReport> {
    let table = PrimeTable::upto((k as f64 + 1.0).exp().ceil() as u64 + 1)?;
    b_witness_with(k, model, q_override, &table)
}

pub fn b_witness_with(
    k: u32,
    model: &RemainderModel<f64>,
    q_override: Option<u64>,
    table: &PrimeTable,
) -> Result<WitnessReport> {
    let (q, q_ceil) = match q_override {
        Some(0) => return Err(Error::domain("Q override must be at least 1")),
        Some(q) => (q, None),
        None => {
            let (lo, hi) = witness_level(k, model)?;
            (lo, (hi != lo).then_some(hi))
        }
    };
    if q == 0 {
        return Err(Error::domain(format!(
            "√(e^k/R(e^k))/k < 1 for k = {k}; pass a Q override"
        )));
    }
    let kf = k as f64;
    let top_log = kf + 1.0 / q as f64;
    let interval = (kf.exp(), top_log.exp());
    if (table.limit() as f64) < interval.1 {
        return Err(Error::domain(format!(
            "prime table reaches {} but the interval ends at {}",
            table.limit(),
            interval.1
        )));
    }
    let primes = table.primes();
    let in_range: Vec<usize> = (primes.partition_point(|&p| (p as f64) < interval.0.floor())
        ..primes.partition_point(|&p| (p as f64) <= interval.1.ceil()))
        .filter(|&i| {
            let lp = (primes[i] as f64).ln();
            lp > kf && lp <= top_log
        })
        .collect();
    if in_range.len() < 2 {
        return Err(Error::domain(format!(
            "(e^{k}, e^{top_log}] holds {} primes; need at least 2",
            in_range.len()
        )));
    }
    let mut groups: HashMap<i64, Vec<u64>> = HashMap::new();
    for &i in &in_range {
        let n = i as i64 + 1;
        let c = k as i64 * n - primes[i] as i64;
        groups.entry(c).or_default().push(n as u64);
    }
    let (c, members) = groups
        .iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
        .map(|(c, m)| (*c, m.clone()))
        .expect("nonempty");
    // k·y − x = C
    let line = Line::new(-1, k as i64, c)?;
    let prefix = *in_range.last().unwrap() as u64 + 1;
    Ok(WitnessReport {
        k,
        q,
        q_ceil,
        interval,
        line,
        count: members.len(),
        members,
        points: in_range.len(),
        groups: groups.len(),
        mean_per_line: in_range.len() as f64 / groups.len() as f64,
        prefix,
    })
}
