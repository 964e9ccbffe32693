//! The statistic `N(x)`: how many of the first `x` prime points lie on a
//! line carrying at least `(n/R(n))^{1/4}` prime points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{max_multiplicity, prime_points, DEFAULT_PAIR_BUDGET};
use crate::primes::RemainderModel;

/// Points `from_n..=to_n` share one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub threshold: u64,
    pub from_n: u64,
    pub to_n: u64,
    pub qualifying: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErdosReport {
    pub x: u64,
    pub universe: u64,
    #[serde(rename = "N_x")]
    pub n_x: u64,
    pub fraction: f64,
    pub thresholds: Vec<ThresholdRow>,
    /// Largest line multiplicity through each of the first `x` points.
    pub multiplicity: Vec<usize>,
}

/// `⌈(n / R(n))^{1/4}⌉`, with `R` evaluated no lower than the start of the
/// model's domain.
pub fn erdos_threshold(n: u64, model: &RemainderModel<f64>) -> Result<u64> {
    let arg = (n as f64).max(model.domain_start());
    let t = (n as f64 / model.bound(arg)?).powf(0.25).ceil();
    Ok(t.max(1.0) as u64)
}

/// `N(x)/x` with line multiplicities taken among the first `universe` prime points.
pub fn erdos_fraction(x: u64, universe: u64, model: &RemainderModel<f64>) -> Result<ErdosReport> {
    erdos_fraction_with(x, universe, model, DEFAULT_PAIR_BUDGET)
}

pub fn erdos_fraction_with(
    x: u64,
    universe: u64,
    model: &RemainderModel<f64>,
    pair_budget: u128,
) -> Result<ErdosReport> {
    if x == 0 {
        return Err(Error::domain("x must be at least 1"));
    }
    if universe < x {
        return Err(Error::domain(format!("universe {universe} is smaller than x = {x}")));
    }
    let points = prime_points(universe as usize)?;
    let mult = max_multiplicity(&points, pair_budget)?;
    let mut thresholds: Vec<ThresholdRow> = Vec::new();
    let mut n_x = 0;
    for n in 1..=x {
        let t = erdos_threshold(n, model)?;
        let ok = mult[n as usize - 1] as u64 >= t;
        n_x += ok as u64;
        match thresholds.last_mut() {
            Some(row) if row.threshold == t => {
                row.to_n = n;
                row.qualifying += ok as u64;
            }
            _ => thresholds.push(ThresholdRow {
                threshold: t,
                from_n: n,
                to_n: n,
                qualifying: ok as u64,
            }),
        }
    }
    Ok(ErdosReport {
        x,
        universe,
        n_x,
        fraction: n_x as f64 / x as f64,
        thresholds,
        multiplicity: mult[..x as usize].to_vec(),
    })
}
