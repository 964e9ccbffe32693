//! OEIS b-files and comparison against computed `L(n)` and awkward primes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::{awkward_from_sequence, l_sequence_for};
use crate::error::{Error, Result};
use crate::geometry::prime_points;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFileEntry {
    pub index: u64,
    pub value: u64,
}

/// Parse `index value` lines. `#` comments and blank lines are skipped;
/// indices must increase strictly.
///
/// ```
/// use prime_lines::oeis::{parse_bfile, BFileEntry};
/// let e = parse_bfile("# L(n)\n2 1\n3 2\n").unwrap();
/// assert_eq!(e, [BFileEntry { index: 2, value: 1 }, BFileEntry { index: 3, value: 2 }]);
/// ```
pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>> {
    let mut out: Vec<BFileEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line,
                msg: format!("expected `index value`, got {raw:?}"),
            });
        };
        let parse = |s: &str, what: &str| {
            s.parse::<u64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad {what} {s:?}: {e}"),
            })
        };
        let entry = BFileEntry {
            index: parse(a, "index")?,
            value: parse(b, "value")?,
        };
        if let Some(prev) = out.last() {
            if entry.index <= prev.index {
                return Err(Error::Parse {
                    line,
                    msg: format!("index {} does not follow {}", entry.index, prev.index),
                });
            }
        }
        out.push(entry);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    /// `a(n) = L(n)`.
    L,
    /// `a(n)` = the n-th awkward prime.
    Awkward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: u64,
    pub file: u64,
    pub computed: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {}: file has {}, computed {}", self.index, self.file, self.computed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisReport {
    pub quantity: Quantity,
    pub n_max: usize,
    /// Indices compared and found equal.
    pub matched: Vec<u64>,
    pub mismatches: Vec<Mismatch>,
    /// Indices whose computed value is not certified exact.
    pub refused: Vec<u64>,
    /// Indices beyond what `n_max` reaches.
    pub beyond: Vec<u64>,
}

impl OeisReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare b-file entries with values computed from the first `n_max` prime
/// points.
///
/// For [`Quantity::L`] entries with index above `n_max` are not computed. For
/// [`Quantity::Awkward`] only awkward primes found among the first `n_max`
/// primes are compared. Values resting on a prefix the search could not
/// certify within `node_budget` are refused rather than compared.
pub fn check_oeis(entries: &[BFileEntry], quantity: Quantity, n_max: usize, node_budget: u64) -> Result<OeisReport> {
    let n_max = match quantity {
        Quantity::L => n_max.min(entries.last().map_or(0, |e| e.index as usize)),
        Quantity::Awkward => n_max,
    };
    let points = prime_points(n_max)?;
    let seq = l_sequence_for(&points, false, node_budget)?;
    let exact = seq.iter().take_while(|e| e.optimal).count();
    let mut report = OeisReport {
        quantity,
        n_max,
        matched: Vec::new(),
        mismatches: Vec::new(),
        refused: Vec::new(),
        beyond: Vec::new(),
    };
    let awkward = match quantity {
        Quantity::Awkward => Some(awkward_from_sequence(&points[..exact], &seq[..exact])?.primes),
        Quantity::L => None,
    };
    for e in entries {
        let i = e.index as usize;
        let computed = match &awkward {
            None if i == 0 => {
                report.beyond.push(e.index);
                continue;
            }
            None if i > n_max => {
                report.beyond.push(e.index);
                continue;
            }
            None if !seq[i - 1].optimal => {
                report.refused.push(e.index);
                continue;
            }
            None => seq[i - 1].size as u64,
            Some(list) => match i.checked_sub(1).and_then(|j| list.get(j)) {
                Some(a) => a.prime,
                None if exact < n_max => {
                    report.refused.push(e.index);
                    continue;
                }
                None => {
                    report.beyond.push(e.index);
                    continue;
                }
            },
        };
        if computed == e.value {
            report.matched.push(e.index);
        } else {
            report.mismatches.push(Mismatch {
                index: e.index,
                file: e.value,
                computed,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::DEFAULT_NODE_BUDGET;

    fn entries(pairs: &[(u64, u64)]) -> Vec<BFileEntry> {
        pairs
            .iter()
            .map(|&(index, value)| BFileEntry { index, value })
            .collect()
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_bfile("24 5\n").unwrap(), entries(&[(24, 5)]));
        assert_eq!(parse_bfile("# comment\n2 1\n3 2\n").unwrap(), entries(&[(2, 1), (3, 2)]));
        assert_eq!(parse_bfile("\n  \n1 1 # tail\n").unwrap(), entries(&[(1, 1)]));
        assert!(matches!(parse_bfile("3 2\n2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_bfile("1 1\n2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_bfile("1 -1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_bfile("1 2 3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn l_values() {
        let r = check_oeis(&entries(&[(2, 1), (3, 2)]), Quantity::L, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.ok());
        assert_eq!(r.matched, [2, 3]);
        let r = check_oeis(&entries(&[(24, 5)]), Quantity::L, 24, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.ok());
        let r = check_oeis(&entries(&[(3, 1)]), Quantity::L, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(
            r.mismatches,
            [Mismatch {
                index: 3,
                file: 1,
                computed: 2
            }]
        );
        assert_eq!(r.mismatches[0].to_string(), "index 3: file has 1, computed 2");
    }

    #[test]
    fn beyond_and_refused() {
        let r = check_oeis(&entries(&[(2, 1), (30, 7)]), Quantity::L, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.beyond, [30]);
        let r = check_oeis(&entries(&[(1, 1), (40, 9)]), Quantity::L, 40, 3).unwrap();
        assert_eq!(r.matched, [1]);
        assert_eq!(r.refused, [40]);
    }

    #[test]
    fn awkward_values() {
        let r = check_oeis(&entries(&[(1, 2), (2, 5)]), Quantity::Awkward, 24, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.ok(), "{:?}", r.mismatches);
        let r = check_oeis(&entries(&[(1, 3)]), Quantity::Awkward, 24, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.mismatches.len(), 1);
    }
}
