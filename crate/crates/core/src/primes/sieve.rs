//! Segmented, odd-only sieve of Eratosthenes.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default number of odd entries per segment (2^20).
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// Default cap on the bytes the output prime list may occupy (4 GiB).
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Odd entries per segment.
    pub segment_len: usize,
    /// Upper bound on the estimated size of the produced prime list, in bytes.
    pub memory_budget: u64,
    /// Sieve segments on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: DEFAULT_SEGMENT_LEN,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            parallel: true,
        }
    }
}

/// All primes `p <= limit`, strictly increasing.
///
/// ```
/// assert_eq!(prime_lines::primes::primes_upto(10).unwrap(), vec![2, 3, 5, 7]);
/// ```
pub fn primes_upto(limit: u64) -> Result<Vec<u64>> {
    primes_upto_with(limit, &SieveConfig::default())
}

pub fn primes_upto_with(limit: u64, config: &SieveConfig) -> Result<Vec<u64>> {
    if limit < 2 {
        return Ok(Vec::new());
    }
    let estimate = estimated_count(limit) as u128 * 8;
    if estimate > config.memory_budget as u128 {
        return Err(Error::Budget {
            what: "prime list bytes",
            needed: estimate,
            budget: config.memory_budget as u128,
        });
    }
    let segment_len = config.segment_len.max(64) as u64;

    let root = isqrt(limit);
    let base = small_primes(root);
    // odd base primes only; 2 is handled by the odd-only layout
    let odd_base: Vec<u64> = base.iter().copied().filter(|&p| p > 2).collect();

    // odd numbers 3, 5, ..., up to limit
    let first = 3u64;
    if limit < first {
        return Ok(vec![2]);
    }
    let odd_count = (limit - first) / 2 + 1;
    let segments: Vec<(u64, u64)> = (0..odd_count)
        .step_by(segment_len as usize)
        .map(|start| (start, (start + segment_len).min(odd_count)))
        .collect();

    let sieve_one = |&(start, end): &(u64, u64)| -> Vec<u64> {
        let lo = first + 2 * start;
        let len = (end - start) as usize;
        let mut composite = vec![false; len];
        for &p in &odd_base {
            if p * p > lo + 2 * (len as u64 - 1) {
                break;
            }
            // first odd multiple of p that is >= max(p*p, lo)
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            let mut idx = ((m - lo) / 2) as usize;
            while idx < len {
                composite[idx] = true;
                idx += p as usize;
            }
        }
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo + 2 * i as u64)
            .collect()
    };

    let chunks: Vec<Vec<u64>> = if config.parallel && segments.len() > 1 {
        segments.par_iter().map(sieve_one).collect()
    } else {
        segments.iter().map(sieve_one).collect()
    };

    let mut out = Vec::with_capacity(chunks.iter().map(Vec::len).sum::<usize>() + 1);
    out.push(2);
    for c in chunks {
        out.extend(c);
    }
    Ok(out)
}

/// The first `n` primes `p_1, ..., p_n`. Empty for `n == 0`.
pub fn first_n_primes(n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut limit = nth_prime_upper_bound(n as u64);
    loop {
        let mut primes = primes_upto(limit)?;
        if primes.len() >= n {
            primes.truncate(n);
            return Ok(primes);
        }
        limit = limit.saturating_mul(2);
    }
}

/// π(x) for real `x`; zero below 2.
pub fn prime_count(x: f64) -> Result<u64> {
    if !(x >= 2.0) {
        return Ok(0);
    }
    let limit = x.floor() as u64;
    Ok(primes_upto(limit)?.len() as u64)
}

/// Sorted prime list with counting and indexing helpers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
}

impl PrimeTable {
    /// Sieve every prime up to `limit`.
    pub fn upto(limit: u64) -> Result<Self> {
        Ok(PrimeTable {
            primes: primes_upto(limit)?,
            limit,
        })
    }

    /// Wrap an existing list; it must be exactly the primes up to `limit`.
    pub fn from_sorted(primes: Vec<u64>, limit: u64) -> Self {
        debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(primes.last().is_none_or(|&p| p <= limit));
        PrimeTable { primes, limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `p_k` (1-based).
    pub fn nth(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.primes.get(i).copied())
    }

    /// π(x) for `x` within the sieved range.
    pub fn pi(&self, x: f64) -> u64 {
        debug_assert!(x <= self.limit as f64 + 1.0, "x beyond sieved range");
        if !(x >= 2.0) {
            return 0;
        }
        let fx = x.floor() as u64;
        self.primes.partition_point(|&p| p <= fx) as u64
    }

    /// π(n) for integer `n` within the sieved range.
    pub fn pi_int(&self, n: u64) -> u64 {
        self.primes.partition_point(|&p| p <= n) as u64
    }

    /// Primes in the half-open index range of the table whose values fall in `(lo, hi]`.
    pub fn index_range(&self, lo: u64, hi: u64) -> std::ops::Range<usize> {
        let a = self.primes.partition_point(|&p| p <= lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        a..b
    }
}

/// Rosser-type bound: `p_n < n (ln n + ln ln n)` for `n >= 6`.
pub fn nth_prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 15;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 3
}

/// Upper estimate of π(limit) used only for the memory check.
fn estimated_count(limit: u64) -> u64 {
    if limit < 17 {
        return 7;
    }
    let x = limit as f64;
    (1.26 * x / x.ln()).ceil() as u64
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while r
        .checked_add(1)
        .and_then(|s| s.checked_mul(s))
        .is_some_and(|v| v <= n)
    {
        r += 1;
    }
    r
}

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}
