use std::collections::BTreeSet;

use prime_lines::bounds::{b_witness_with, bound_curves, farey_cover_with, WPolicy};
use prime_lines::cover::{exact_cover, greedy_cover, l_sequence, verify_cover, CoverSolution};
use prime_lines::geometry::{b_sequence, best_line, prime_points, PrimePoint};
use prime_lines::primes::cache::{primes_upto_cached, read_primes};
use prime_lines::primes::{empirical_model, first_n_primes, PrimeTable};
use prime_lines::{CurvePoint, Model};

#[test]
fn covers_verify_and_round_trip() {
    for n in [1, 2, 3, 10, 24, 35] {
        let points = prime_points(n).unwrap();
        let exact = exact_cover(&points, false, 1_000_000).unwrap();
        assert!(exact.optimal, "n = {n}");
        assert!(verify_cover(&points, &exact, Some(exact.size)).valid);
        let greedy = greedy_cover(&points, false).unwrap();
        assert!(verify_cover(&points, &greedy, None).valid);
        assert!(greedy.size >= exact.size);
        let back: CoverSolution = serde_json::from_str(&serde_json::to_string(&exact).unwrap()).unwrap();
        assert_eq!(back, exact);
    }
}

#[test]
fn tampered_cover_is_rejected() {
    let points = prime_points(24).unwrap();
    let mut sol = exact_cover(&points, false, 1_000_000).unwrap();
    sol.size -= 1;
    assert!(!verify_cover(&points, &sol, None).valid);
    let mut sol = exact_cover(&points, false, 1_000_000).unwrap();
    sol.lines.pop();
    assert!(!verify_cover(&points, &sol, None).valid);
}

#[test]
fn sequences_agree_with_prefix_covers() {
    let seq = l_sequence(30, false, 1_000_000).unwrap();
    let b = b_sequence(&prime_points(30).unwrap()).unwrap();
    for n in 1..=30 {
        let points = prime_points(n).unwrap();
        assert_eq!(seq[n - 1].size, exact_cover(&points, false, 1_000_000).unwrap().size);
        assert_eq!(b[n - 1].count, best_line(&points).unwrap().count);
        // a cover by L lines needs one line through at least n / L points
        assert!(b[n - 1].count * seq[n - 1].size >= n);
    }
}

#[test]
fn cached_primes_match_sieve() {
    let dir = tempfile::tempdir().unwrap();
    let a = primes_upto_cached(100_000, Some(dir.path())).unwrap();
    let b = primes_upto_cached(100_000, Some(dir.path())).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 9592);
    assert_eq!(&a[..1000], &first_n_primes(1000).unwrap()[..]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect::<Result<_, _>>().unwrap();
    assert_eq!(files.len(), 1);
    assert!(read_primes(&files[0].path()).unwrap().starts_with(&a));
}

#[test]
fn farey_cover_lines_pass_through_every_inverse_point() {
    let k = 9;
    let table = PrimeTable::upto((k as f64 + 1.0).exp().ceil() as u64 + 1).unwrap();
    let model = empirical_model(k + 2).unwrap();
    let report = farey_cover_with(k, &model, WPolicy::Empirical, None, &table).unwrap();
    let lines: BTreeSet<_> = report.lines.iter().copied().collect();
    let mut seen = 0;
    for (i, &p) in table.primes().iter().enumerate() {
        let lp = (p as f64).ln();
        if lp <= k as f64 || lp > k as f64 + 1.0 {
            continue;
        }
        seen += 1;
        let pt = PrimePoint::inverse(i as u64 + 1, p);
        let line = report.line_for(i as u64 + 1, p).expect("point lies in a cell");
        assert!(line.contains(pt.coords()), "{pt:?} not on {line:?}");
        assert!(lines.contains(&line));
    }
    assert_eq!(seen, report.covered);
    assert!(report.uncovered.is_empty());
    let back: prime_lines::bounds::FareyCoverReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back.lines, report.lines);
}

#[test]
fn witness_members_are_collinear_prime_points() {
    let k = 8;
    let table = PrimeTable::upto((k as f64 + 1.0).exp().ceil() as u64 + 1).unwrap();
    let model = empirical_model(k + 2).unwrap();
    let w = b_witness_with(k, &model, None, &table).unwrap();
    assert_eq!(w.members.len(), w.count);
    for &n in &w.members {
        let p = table.primes()[n as usize - 1];
        assert!(w.line.contains(PrimePoint::inverse(n, p).coords()));
    }
    let direct = best_line(&prime_points(w.prefix as usize).unwrap()).unwrap();
    assert!(direct.count >= w.count);
}

#[test]
fn bound_curves_round_trip() {
    let model = Model::RiemannHypothesis;
    let curves: Vec<CurvePoint> = bound_curves(&model, &[3, 100, 10_000]).unwrap();
    let back: Vec<CurvePoint> = serde_json::from_str(&serde_json::to_string(&curves).unwrap()).unwrap();
    for (a, b) in curves.iter().zip(&back) {
        assert_eq!(a.n, b.n);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }
}
