//! The logarithmic integral li(x) = PV ∫₀ˣ dt / ln t.
//!
//! Two routes:
//!
//! * quadrature of the regularised integrand `1/ln t - 1/(t-1)` plus the
//!   closed-form principal value `ln|x-1|` of the subtracted pole, used for
//!   `x <= 1000`;
//! * Ramanujan's series for `x > 1000`.

use crate::error::{Error, Result};
use crate::real::Real;

/// Tolerance used by [`li`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Above this argument the series is used instead of quadrature.
pub const SERIES_THRESHOLD: f64 = 1e3;

/// li(x) to absolute accuracy `tol`.
///
/// `x = 1` is rejected: the integral diverges there.
pub fn log_integral<T: Real>(x: T, tol: T) -> Result<T> {
    if !(tol > T::zero()) {
        return Err(Error::domain("tolerance must be positive"));
    }
    if x.is_nan() || x < T::zero() {
        return Err(Error::domain(format!("li undefined for x = {x:?}")));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if x == T::one() {
        return Err(Error::domain("li(1) diverges"));
    }
    if x.is_infinite() {
        return Ok(T::infinity());
    }
    if x > T::lit(SERIES_THRESHOLD) {
        Ok(li_series(x))
    } else {
        Ok(li_quadrature(x, tol))
    }
}

/// li(x) with [`DEFAULT_TOL`]; `-inf` at 1 and NaN for negative input.
pub fn li<T: Real>(x: T) -> T {
    if x == T::one() {
        return T::neg_infinity();
    }
    log_integral(x, T::lit(DEFAULT_TOL)).unwrap_or(T::nan())
}

/// Ramanujan's series, valid for `x > 1`:
///
/// li(x) = γ + ln ln x + √x Σ_{n≥1} (-1)^{n-1} (ln x)^n / (n! 2^{n-1}) Σ_{k=0}^{⌊(n-1)/2⌋} 1/(2k+1)
pub fn li_series<T: Real>(x: T) -> T {
    debug_assert!(x > T::one());
    let l = x.ln();
    let half = T::lit(0.5);
    let mut sum = T::zero();
    // term = (-1)^{n-1} l^n / (n! 2^{n-1})
    let mut term = l;
    let mut inner = T::one(); // Σ_{k ≤ (n-1)/2} 1/(2k+1)
    let eps = T::epsilon();
    for n in 1..400usize {
        let add = term * inner;
        sum = sum + add;
        if n > 2 && add.abs() <= eps * sum.abs() {
            break;
        }
        let nf = T::from_usize(n + 1).unwrap();
        term = -term * l * half / nf;
        if n % 2 == 0 {
            // entering n+1 (odd) adds the k = n/2 term
            inner = inner + T::one() / T::from_usize(n + 1).unwrap();
        }
    }
    T::euler_gamma() + l.ln() + x.sqrt() * sum
}

/// Quadrature route, valid for any `x > 0`, `x != 1`.
pub fn li_quadrature<T: Real>(x: T, tol: T) -> T {
    debug_assert!(x > T::zero() && x != T::one());
    let eps = T::epsilon() * T::lit(64.0);
    // the integrand is O(1); ask for at least a few ulps of the result scale
    let tol = tol.max(eps * x.max(T::one()));
    let pole = (x - T::one()).abs().ln();
    let mut total = T::zero();
    // split at 1 and 2 so each panel sees a smooth stretch
    let mut breaks = vec![T::zero()];
    for b in [T::lit(0.5), T::one(), T::lit(2.0), T::lit(10.0), T::lit(100.0)] {
        if b < x {
            breaks.push(b);
        }
    }
    breaks.push(x);
    let panels = T::from_usize(breaks.len() - 1).unwrap();
    for w in breaks.windows(2) {
        total = total + adaptive_simpson(regularised, w[0], w[1], tol / (T::lit(2.0) * panels));
    }
    total + pole
}

/// `1/ln t - 1/(t-1)`, continuous on `[0, ∞)` with value 1/2 at t = 1.
fn regularised<T: Real>(t: T) -> T {
    if t == T::zero() {
        return T::one();
    }
    let d = t - T::one();
    if d.abs() < T::lit(1e-4) {
        // 1/ln(1+d) - 1/d = 1/2 - d/12 + d²/24 - 19d³/720 + O(d⁴)
        return T::lit(0.5) - d / T::lit(12.0) + d * d / T::lit(24.0)
            - T::lit(19.0) * d * d * d / T::lit(720.0);
    }
    T::one() / t.ln() - T::one() / d
}

fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> T {
    let two = T::lit(2.0);
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) / two;
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> T {
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_domain() {
        assert_eq!(log_integral(0.0f64, 1e-9).unwrap(), 0.0);
        assert!(log_integral(1.0f64, 1e-9).is_err());
        assert!(log_integral(-1.0f64, 1e-9).is_err());
        assert!(log_integral(2.0f64, 0.0).is_err());
        assert_eq!(li(1.0f64), f64::NEG_INFINITY);
    }

    #[test]
    fn reference_values() {
        // li(2) = 1.045163780117492784...
        assert!((log_integral(2.0f64, 1e-10).unwrap() - 1.045_163_780_117_493).abs() < 1e-9);
        // Soldner's constant is the unique positive root
        assert!(li(1.451_369_234_883_381_f64).abs() < 1e-9);
        // li(1e6) = 78627.549159...
        assert!((li(1e6f64) - 78_627.549_159_5).abs() < 1e-4);
        // li(0.5) = -0.378671043061...
        assert!((li(0.5f64) + 0.378_671_043_061_8).abs() < 1e-9);
    }

    #[test]
    fn routes_agree_on_overlap() {
        for &x in &[1.5f64, 3.0, 10.0, 57.3, 400.0, 999.0, 1000.0, 1200.0] {
            let q = li_quadrature(x, 1e-11);
            let s = li_series(x);
            assert!((q - s).abs() < 1e-8, "x = {x}: {q} vs {s}");
        }
    }

    #[test]
    fn generic_f32_is_close_to_f64() {
        for &x in &[2.0f32, 10.0, 5000.0] {
            let a = li(x) as f64;
            let b = li(x as f64);
            assert!((a - b).abs() / b.abs() < 1e-4, "{x}: {a} vs {b}");
        }
    }
}
