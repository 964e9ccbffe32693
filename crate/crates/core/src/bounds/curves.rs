//! Theoretical bound curves, each with implicit constant 1. They show the
//! shape of a bound only; no constant is certified.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::RemainderModel;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCurvePoint<T> {
    pub n: u64,
    /// `n^{3/4} R(n)^{1/4} / (log n)^{1/2}`
    #[serde(rename = "L_upper")]
    pub l_upper: T,
    /// `√(n/R(n)) / log n`
    #[serde(rename = "B_lower")]
    pub b_lower: T,
    /// `√(n R(n))`
    #[serde(rename = "B_upper")]
    pub b_upper: T,
    /// `n^{1/4} / (log n)^{1/2}`
    pub rh_l_lower: T,
    /// `n^{7/8} / (log n)^{1/4}`
    pub rh_l_upper: T,
    /// `n^{1/4} / (log n)^{3/2}`
    pub rh_b_lower: T,
    /// `n^{3/4} (log n)^{1/2}`
    pub rh_b_upper: T,
    /// `n / log n`
    pub sloane_ref: T,
}

/// Evaluate every curve at each `n >= 3`.
pub fn bound_curves<T: Real>(model: &RemainderModel<T>, ns: &[u64]) -> Result<Vec<BoundCurvePoint<T>>> {
    ns.iter().map(|&n| curve_point(model, n)).collect()
}

fn curve_point<T: Real>(model: &RemainderModel<T>, n: u64) -> Result<BoundCurvePoint<T>> {
    if n < 3 {
        return Err(Error::domain(format!("bound curves need n >= 3, got {n}")));
    }
    let x = T::from_u64_lossy(n);
    let r = model.bound(x)?;
    let l = x.ln();
    let p = |e: f64| x.powf(T::lit(e));
    let q = |e: f64| l.powf(T::lit(e));
    Ok(BoundCurvePoint {
        n,
        l_upper: p(0.75) * r.powf(T::lit(0.25)) / q(0.5),
        b_lower: (x / r).sqrt() / l,
        b_upper: (x * r).sqrt(),
        rh_l_lower: p(0.25) / q(0.5),
        rh_l_upper: p(0.875) / q(0.25),
        rh_b_lower: p(0.25) / q(1.5),
        rh_b_upper: p(0.75) * q(0.5),
        sloane_ref: x / l,
    })
}

impl<T: Real> BoundCurvePoint<T> {
    /// The curve values in field order, without `n`.
    pub fn values(&self) -> [T; 8] {
        [
            self.l_upper,
            self.b_lower,
            self.b_upper,
            self.rh_l_lower,
            self.rh_l_upper,
            self.rh_b_lower,
            self.rh_b_upper,
            self.sloane_ref,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let rh = RemainderModel::<f64>::RiemannHypothesis;
        let e4 = 4f64.exp();
        let x = e4.round() as u64;
        let p = bound_curves(&rh, &[x]).unwrap()[0];
        let xf = x as f64;
        assert!((p.b_upper - (xf * xf.sqrt() * xf.ln()).sqrt()).abs() < 1e-9);
        // at exactly e^4 the value is 2e^3
        let exact = (e4 * (e4.sqrt() * 4.0)).sqrt();
        assert!((exact - 2.0 * 3f64.exp()).abs() < 1e-9);
        let p10 = bound_curves(&rh, &[10]).unwrap()[0];
        assert!((p10.sloane_ref - 4.342_944_819_032_518).abs() < 1e-12);
        let p3 = bound_curves(&rh, &[3]).unwrap()[0];
        assert!(p3.values().iter().all(|v| v.is_finite() && *v > 0.0));
        assert!(bound_curves(&rh, &[2]).is_err());
    }

    #[test]
    fn increasing_under_rh() {
        let rh = RemainderModel::<f64>::RiemannHypothesis;
        let ns: Vec<u64> = (0..400).map(|i| (10.0 * 1.04f64.powi(i)).round() as u64).collect();
        let pts = bound_curves(&rh, &ns).unwrap();
        let start6 = 6f64.exp();
        for w in pts.windows(2) {
            if w[0].n == w[1].n {
                continue;
            }
            let (a, b) = (w[0].values(), w[1].values());
            for c in 0..8 {
                // n^{1/4}/(log n)^{3/2} turns upward only at n = e^6
                let late = c == 1 || c == 5;
                if late && (w[0].n as f64) < start6 {
                    continue;
                }
                assert!(b[c] > a[c], "curve {c} at n = {}", w[1].n);
            }
        }
    }

    #[test]
    fn generic_over_f32() {
        let rh = RemainderModel::<f32>::RiemannHypothesis;
        let a = bound_curves(&rh, &[1000]).unwrap()[0];
        let b = bound_curves(&RemainderModel::<f64>::RiemannHypothesis, &[1000]).unwrap()[0];
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((*x as f64 - y).abs() / y < 1e-5);
        }
    }
}
