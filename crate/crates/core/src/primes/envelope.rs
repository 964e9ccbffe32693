//! Sampled comparison of |π(x) − li(x)| against a remainder model.

use serde::{Deserialize, Serialize};

use super::li::li;
use super::model::{EmpiricalTable, RemainderModel};
use super::sieve::PrimeTable;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeViolation {
    pub x: f64,
    pub deviation: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub x_max: u64,
    pub samples: usize,
    /// Samples skipped because they lie outside the model's domain.
    pub skipped: usize,
    pub max_deviation: f64,
    pub argmax_x: f64,
    pub violations: Vec<EnvelopeViolation>,
}

impl EnvelopeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate |π − li| at `sample_count` log-spaced points of `[2, x_max]`.
///
/// Each sample `x` is paired with the prime jump just below it: for the
/// largest prime `p <= x` both `π(p) − li(p)` and the left limit
/// `π(p) − 1 − li(p)` are evaluated, which are the extreme values of
/// `π − li` on the gap containing `x`.
pub fn pnt_envelope_check(
    model: &RemainderModel<f64>,
    x_max: u64,
    sample_count: usize,
) -> Result<EnvelopeReport> {
    let table = PrimeTable::upto(x_max.max(2))?;
    envelope_with_table(model, &table, x_max, sample_count)
}

pub fn envelope_with_table(
    model: &RemainderModel<f64>,
    table: &PrimeTable,
    x_max: u64,
    sample_count: usize,
) -> Result<EnvelopeReport> {
    let x_max = x_max.max(2);
    let mut report = EnvelopeReport {
        x_max,
        samples: 0,
        skipped: 0,
        max_deviation: 0.0,
        argmax_x: 2.0,
        violations: Vec::new(),
    };
    let lo = model.domain_start().max(2.0);
    let hi = (x_max as f64).min(model.domain_end());
    if hi < lo {
        report.skipped = sample_count;
        return Ok(report);
    }
    let n = sample_count.max(1);
    let mut probes: Vec<(f64, f64)> = Vec::with_capacity(3 * n);
    for i in 0..n {
        let x = if n == 1 {
            hi
        } else {
            (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()
        }
        .clamp(lo, hi);
        let pi_x = table.pi(x) as f64;
        probes.push((x, (pi_x - li(x)).abs()));
        if let Some(p) = table.nth(pi_x as usize) {
            let p = p as f64;
            if p >= lo {
                let lp = li(p);
                probes.push((p, (pi_x - lp).abs()));
                if p > 2.0 {
                    probes.push((p, (pi_x - 1.0 - lp).abs()));
                }
            }
        }
    }
    for (x, dev) in probes {
        let bound = match model.bound(x) {
            Ok(b) => b,
            Err(_) => {
                report.skipped += 1;
                continue;
            }
        };
        report.samples += 1;
        if dev > report.max_deviation {
            report.max_deviation = dev;
            report.argmax_x = x;
        }
        if dev > bound {
            report.violations.push(EnvelopeViolation {
                x,
                deviation: dev,
                bound,
            });
        }
    }
    Ok(report)
}

/// Exact running maximum of |π(x) − li(x)| over `2 <= x <= g` for each grid
/// value `g`, scanning every prime jump. Grid must be increasing and within
/// the table.
pub fn observed_deviation(table: &PrimeTable, grid: &[f64]) -> Vec<(f64, f64)> {
    let primes = table.primes();
    let mut out = Vec::with_capacity(grid.len());
    let mut best = 0.0f64;
    let mut next = 0usize;
    for &g in grid {
        while next < primes.len() && (primes[next] as f64) <= g {
            let p = primes[next] as f64;
            let count = (next + 1) as f64;
            let lp = li(p);
            best = best.max((count - lp).abs());
            if next > 0 {
                best = best.max((count - 1.0 - lp).abs());
            }
            next += 1;
        }
        if g >= 2.0 {
            best = best.max((next as f64 - li(g)).abs());
        }
        out.push((g, best));
    }
    out
}

/// Empirical model whose rows are the observed maxima at `e^j` for
/// `j = 1..=max_exp` (rounded up to integers, minimum 1).
pub fn empirical_model(max_exp: u32) -> Result<RemainderModel<f64>> {
    let limit = (max_exp as f64).exp().ceil() as u64;
    let table = PrimeTable::upto(limit)?;
    let grid: Vec<f64> = (1..=max_exp).map(|j| (j as f64).exp()).collect();
    let rows: Vec<(f64, f64)> = observed_deviation(&table, &grid)
        .into_iter()
        .map(|(x, d)| (x, d.ceil().max(1.0)))
        .collect();
    Ok(RemainderModel::Empirical(EmpiricalTable::from_running_max(&rows)?))
}
