use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use prime_lines::bounds::{ErdosReport, FareyCoverReport, WitnessReport};
use prime_lines::cover::{verify_cover, AwkwardReport, CoverSolution};
use prime_lines::geometry::{prime_points, BEntry, Line};
use prime_lines::primes::EnvelopeReport;
use prime_lines::CurvePoint;
use prime_lines_cli::{BRow, IndexValue, LRow};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prime-lines"))
        .args(args)
        .env_remove("PRIME_LINES_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows<T: serde::de::DeserializeOwned>(text: &str) -> Vec<T> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn primes_count_one() {
    let o = bin(&["primes", "--count", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "index,value\n1,2\n");
    let o = bin(&["primes", "--count", "24", "--format", "json"]);
    let rows: Vec<IndexValue> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[23], IndexValue { index: 24, value: 89 });
}

#[test]
fn ln_24_json_is_a_verified_optimal_cover() {
    let o = bin(&["ln", "--n", "24", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_start().starts_with("{\n  \"n\": 24,\n  \"size\": 5,"));
    let sol: CoverSolution = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(sol.optimal && !sol.truncated);
    assert!(verify_cover(&prime_points(24).unwrap(), &sol, Some(5)).valid);
}

#[test]
fn ln_and_lnp_csv_sequences() {
    let rows: Vec<LRow> = csv_rows(&stdout(&bin(&["ln", "--n", "30"])));
    assert_eq!(rows.len(), 30);
    assert_eq!((rows[1].size, rows[2].size, rows[23].size), (1, 2, 5));
    let np: Vec<LRow> = csv_rows(&stdout(&bin(&["lnp", "--n", "30"])));
    assert!(rows.iter().zip(&np).all(|(a, b)| b.size >= a.size && b.optimal));
}

#[test]
fn bn_21() {
    let o = bin(&["bn", "--n", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<BRow> = csv_rows(&stdout(&o));
    let last = rows.last().unwrap();
    assert_eq!((last.n, last.count, last.a, last.b, last.c), (21, 8, Some(4), Some(-1), Some(11)));
    assert_eq!((rows[0].a, rows[0].count), (None, 1));
    let json: Vec<BEntry> = serde_json::from_str(&stdout(&bin(&["bn", "--n", "21", "--format", "json"]))).unwrap();
    assert_eq!(json.len(), 21);
    assert_eq!(json[20].line, Some(Line::new(4, -1, 11).unwrap()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["bogus"]).status.code(), Some(2));
    assert_eq!(bin(&["ln", "--n", "3", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(bin(&["ln"]).status.code(), Some(2));
    assert_eq!(bin(&["ln", "--n", "3", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_error_exits_one_without_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.json");
    let o = bin(&[
        "farey-cover",
        "--k",
        "10",
        "--model",
        "rh",
        "--w-policy",
        "analytic",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("farey_level"));
    assert!(!out.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(bin(&["bounds", "--n", "100", "--model", "wat"]).status.code(), Some(1));
}

#[test]
fn truncation_exits_three_with_marker() {
    let o = bin(&["ln", "--n", "40", "--node-budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("TRUNCATED"));
    let rows: Vec<LRow> = csv_rows(&stdout(&o));
    assert!(rows.iter().any(|r| !r.optimal));

    let o = bin(&["ln", "--n", "40", "--node-budget", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let sol: CoverSolution = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(sol.truncated && !sol.optimal);
    assert!(verify_cover(&prime_points(40).unwrap(), &sol, None).valid);

    assert_eq!(bin(&["awkward", "--n", "40", "--node-budget", "3"]).status.code(), Some(3));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = bin(&["bn", "--n", "50", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), stdout(&bin(&["bn", "--n", "50"])));
}

#[test]
fn single_thread_matches_default() {
    for args in [&["bn", "--n", "120"][..], &["ln", "--n", "30"], &["farey-cover", "--k", "8"]] {
        let one: Vec<&str> = args.iter().copied().chain(["--threads", "1"]).collect();
        assert_eq!(stdout(&bin(args)), stdout(&bin(&one)), "{args:?}");
    }
}

#[test]
fn awkward_round_trip() {
    let o = bin(&["awkward", "--n", "24", "--format", "json"]);
    let r: AwkwardReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.primes.len(), 5);
    assert_eq!(r.primes[0].prime, 2);
    let csv = stdout(&bin(&["awkward", "--n", "24"]));
    assert!(csv.starts_with("index,prime\n1,2\n"));
}

#[test]
fn farey_cover_round_trip() {
    let json = stdout(&bin(&["farey-cover", "--k", "8", "--format", "json"]));
    let r: FareyCoverReport = serde_json::from_str(&json).unwrap();
    assert!(r.uncovered.is_empty());
    assert!(json.contains("\"Q\": 1"));
    let lines: Vec<Line> = csv_rows(&stdout(&bin(&["farey-cover", "--k", "8"])));
    assert_eq!(lines, r.lines);
    let q3 = bin(&["farey-cover", "--k", "8", "--q-override", "3", "--w-policy", "analytic", "--format", "json"]);
    let r: FareyCoverReport = serde_json::from_str(&stdout(&q3)).unwrap();
    assert_eq!(r.q, 3);
    assert_eq!(r.covered + r.uncovered.len(), 590);
}

#[test]
fn witness_round_trip() {
    let json = stdout(&bin(&["b-witness", "--k", "8", "--format", "json"]));
    let r: WitnessReport = serde_json::from_str(&json).unwrap();
    assert!(r.count >= 2);
    let csv = stdout(&bin(&["b-witness", "--k", "8"]));
    let row: Vec<prime_lines_cli::WitnessRow> = csv_rows(&csv);
    assert_eq!((row[0].a, row[0].b, row[0].c, row[0].count), (r.line.a, r.line.b, r.line.c, r.count));
}

#[test]
fn bounds_round_trip() {
    let csv = stdout(&bin(&["bounds", "--n", "10000", "--points", "30"]));
    assert!(csv.starts_with("n,L_upper,B_lower,B_upper,rh_l_lower,"));
    let rows: Vec<CurvePoint> = csv_rows(&csv);
    let json: Vec<CurvePoint> =
        serde_json::from_str(&stdout(&bin(&["bounds", "--n", "10000", "--points", "30", "--format", "json"]))).unwrap();
    assert_eq!(rows.len(), json.len());
    for (a, b) in rows.iter().zip(&json) {
        assert_eq!(a.n, b.n);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{x} vs {y}");
        }
    }
    assert_eq!(rows.len(), 30);
    assert!(bin(&["bounds", "--n", "1000", "--model", "uncond:0.2"]).status.code() == Some(1));
}

#[test]
fn erdos_and_envelope() {
    let r: ErdosReport =
        serde_json::from_str(&stdout(&bin(&["erdos", "--x", "50", "--universe", "500", "--format", "json"]))).unwrap();
    assert_eq!(r.n_x, 50);
    let o = bin(&["envelope", "--x-max", "100000", "--samples", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let e: EnvelopeReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(e.ok());
    // a model far below the observed deviation fails the check
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("tiny.txt");
    fs::write(&table, "# x bound\n1e5 1\n").unwrap();
    let spec = format!("empirical:{}", table.display());
    let o = bin(&["envelope", "--x-max", "100000", "--samples", "200", "--model", &spec]);
    assert_eq!(o.status.code(), Some(1));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_oeis_local_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "# L(n)\n2 1\n3 2\n24 5\n");
    let o = bin(&["check-oeis", "--bfile", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let bad = write(dir.path(), "bad.txt", "3 1\n");
    let o = bin(&["check-oeis", "--bfile", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("index 3: file has 1, computed 2"));

    let awk = write(dir.path(), "awk.txt", "1 2\n2 5\n3 13\n");
    let o = bin(&["check-oeis", "--bfile", &awk, "--quantity", "awkward", "--n", "24"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let broken = write(dir.path(), "broken.txt", "3 2\n2 1\n");
    let o = bin(&["check-oeis", "--bfile", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn unreachable_url_falls_back_to_local_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "b000000.txt", "2 1\n3 2\n");
    let o = Command::new(env!("CARGO_BIN_EXE_prime-lines"))
        .args(["check-oeis", "--bfile", "http://127.0.0.1:9/b000000.txt"])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn sieve_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_prime-lines"))
            .args(["primes", "--count", "1000"])
            .env("PRIME_LINES_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(dir.path().join("primes.bin").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, bin(&["primes", "--count", "1000"]).stdout);
}

#[test]
fn library_entry_point() {
    assert_eq!(prime_lines_cli::run(["prime-lines", "primes", "--count", "3"]), 0);
    assert_eq!(prime_lines_cli::run(["prime-lines", "nope"]), 2);
}
