//! Remainder models R(x) bounding |π(x) − li(x)|.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Default constant in the unconditional de la Vallée Poussin–Vinogradov form.
pub const DEFAULT_UNCONDITIONAL_C: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RemainderModel<T> {
    /// `x / exp(c (ln x)^{3/5} (ln ln x)^{-1/5})`, defined for `x >= e^e`.
    Unconditional { c: T },
    /// `√x ln x`.
    RiemannHypothesis,
    /// Step function from observed maxima; see [`EmpiricalTable`].
    Empirical(EmpiricalTable<T>),
    /// `scale · x^alpha` with `0 < alpha < 1`.
    CustomPower { alpha: T, scale: T },
}

/// Table of `(x, bound)` rows, strictly increasing in `x`, nondecreasing and
/// positive in `bound`.
///
/// A query returns the bound of the smallest tabulated `x` that is `>=` the
/// query. Queries past the last row are outside the model's domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalTable<T> {
    rows: Vec<(T, T)>,
}

impl<T: Real> EmpiricalTable<T> {
    pub fn new(rows: Vec<(T, T)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::domain("empirical table is empty"));
        }
        for (i, &(x, r)) in rows.iter().enumerate() {
            if !(r > T::zero()) || !x.is_finite() {
                return Err(Error::domain(format!("row {i}: bound must be positive")));
            }
            if i > 0 {
                let (px, pr) = rows[i - 1];
                if !(x > px) {
                    return Err(Error::domain(format!("row {i}: x not increasing")));
                }
                if r < pr {
                    return Err(Error::domain(format!("row {i}: bound decreases")));
                }
            }
        }
        Ok(EmpiricalTable { rows })
    }

    /// Build a table from raw observations `(x, deviation)`, replacing each
    /// value by the running maximum so the result is monotone. Zero deviations
    /// are lifted to 1.
    pub fn from_running_max(observations: &[(T, T)]) -> Result<Self> {
        let mut best = T::one();
        let rows = observations
            .iter()
            .map(|&(x, d)| {
                best = best.max(d);
                (x, best)
            })
            .collect();
        Self::new(rows)
    }

    pub fn rows(&self) -> &[(T, T)] {
        &self.rows
    }

    pub fn max_x(&self) -> T {
        self.rows.last().unwrap().0
    }

    pub fn lookup(&self, x: T) -> Option<T> {
        let i = self.rows.partition_point(|&(tx, _)| tx < x);
        self.rows.get(i).map(|&(_, r)| r)
    }
}

impl<T: Real> RemainderModel<T> {
    pub fn unconditional(c: T) -> Result<Self> {
        if !(c > T::zero()) || !c.is_finite() {
            return Err(Error::domain("unconditional constant c must be positive"));
        }
        Ok(RemainderModel::Unconditional { c })
    }

    pub fn custom_power(alpha: T, scale: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::domain("alpha must lie in (0, 1)"));
        }
        if !(scale > T::zero()) {
            return Err(Error::domain("scale must be positive"));
        }
        Ok(RemainderModel::CustomPower { alpha, scale })
    }

    pub fn empirical(rows: Vec<(T, T)>) -> Result<Self> {
        Ok(RemainderModel::Empirical(EmpiricalTable::new(rows)?))
    }

    /// Smallest argument accepted by [`Self::bound`].
    pub fn domain_start(&self) -> T {
        match self {
            RemainderModel::Unconditional { .. } => T::E().exp(),
            _ => T::lit(2.0),
        }
    }

    /// Largest argument accepted by [`Self::bound`].
    pub fn domain_end(&self) -> T {
        match self {
            RemainderModel::Empirical(t) => t.max_x(),
            _ => T::infinity(),
        }
    }

    /// R(x).
    pub fn bound(&self, x: T) -> Result<T> {
        if x.is_nan() || x < T::lit(2.0) {
            return Err(Error::domain(format!("R(x) needs x >= 2, got {x:?}")));
        }
        match self {
            RemainderModel::Unconditional { c } => {
                if x < T::E().exp() {
                    return Err(Error::domain(format!(
                        "unconditional model needs x >= e^e, got {x:?}"
                    )));
                }
                let l = x.ln();
                let ll = l.ln();
                let expo = *c * l.powf(T::lit(0.6)) * ll.powf(T::lit(-0.2));
                Ok(x / expo.exp())
            }
            RemainderModel::RiemannHypothesis => Ok(x.sqrt() * x.ln()),
            RemainderModel::Empirical(t) => t.lookup(x).ok_or_else(|| {
                Error::domain(format!(
                    "x = {x:?} lies beyond the empirical table (last x = {:?})",
                    t.max_x()
                ))
            }),
            RemainderModel::CustomPower { alpha, scale } => Ok(*scale * x.powf(*alpha)),
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self {
            RemainderModel::Unconditional { c } => format!("uncond:{c:?}"),
            RemainderModel::RiemannHypothesis => "rh".to_string(),
            RemainderModel::Empirical(t) => format!("empirical[{} rows]", t.rows().len()),
            RemainderModel::CustomPower { alpha, scale } => format!("power:{alpha:?}:{scale:?}"),
        }
    }
}

/// R(x) for any model; free-function form of [`RemainderModel::bound`].
pub fn remainder_bound<T: Real>(model: &RemainderModel<T>, x: T) -> Result<T> {
    model.bound(x)
}
