use std::process::{Command, Output};

use nucleus_core::Report;

fn nucleus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucleus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_subcommand() {
    let o = nucleus(&["dim", "--m", "2", "--t", "3", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0 (NonEmpty)");
    let o = nucleus(&["dim", "--m", "2", "--t", "2", "--p", "3"]);
    assert_eq!(stdout(&o).trim(), "-1 (SmallT)");
}

#[test]
fn multinomial_subcommand() {
    let o = nucleus(&["multinomial", "--t", "3", "--e", "1,1,1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6, residue 0, carry_free false");
    let o = nucleus(&["multinomial", "--t", "4", "--e", "1,1,1", "--p", "2"]);
    assert_eq!(stdout(&o).trim(), "0, residue 0, carry_free false");
}

#[test]
fn verify_gf2_surface() {
    let o = nucleus(&["verify", "--field", "2", "--m", "2", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("predicted 2, brute 2") && s.contains("match"), "{s}");
}

#[test]
fn verify_with_explicit_modulus_and_json() {
    let o = nucleus(&["verify", "--field", "2^2/1,1,1", "--m", "2", "--t", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.schema_version, "1");
    assert_eq!(r.entries[0].bruteforce_dim, 0);
    assert_eq!(Report::from_json(&r.to_json().unwrap()).unwrap(), r);
}

#[test]
fn scan_csv_and_json() {
    let args =
        ["scan", "--primes", "2,3", "--max-k", "2", "--m-range", "1..2", "--t-range", "2..4", "--require-q-ge-t"];
    let o = nucleus(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next().unwrap(), "p,k,q,m,t,predicted_dim,bruteforce_dim,basis_match,small_field");
    let o = nucleus(&[&args[..], &["--format", "json"]].concat());
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.summary.mismatches, 0);
    assert_eq!(r.summary.total, s.lines().count() - 1);
}

#[test]
fn small_field_scan_still_exits_zero() {
    let o = nucleus(&["scan", "--primes", "2", "--max-k", "1", "--m-range", "1..2", "--t-range", "3..5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("small-field 6"));
}

#[test]
fn classify_and_demo() {
    let o = nucleus(&["classify", "--p", "2", "--m-max", "2", "--t-max", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m,t,case,formula_dim,consistent"));
    let o = nucleus(&["demo-projection"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("21 points, 21 distinct images"));
}

#[test]
fn usage_errors() {
    for args in [
        &["dim", "--m", "2", "--t", "3", "--p", "6"][..],
        &["verify", "--field", "4", "--m", "1", "--t", "2"],
        &["scan", "--primes", "2", "--max-k", "1", "--m-range", "3..1", "--t-range", "2"],
        &["multinomial", "--t", "3", "--e", "1,x", "--p", "2"],
        &["nope"],
    ] {
        let o = nucleus(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn scan_with_order_cap_covers_the_mixed_grid() {
    let o = nucleus(&[
        "scan",
        "--primes",
        "2,3,5",
        "--max-k",
        "4",
        "--max-q",
        "16",
        "--m-range",
        "1..3",
        "--t-range",
        "2..6",
        "--require-q-ge-t",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.summary.total, r.summary.mismatches), (75, 0));
    assert!(r.entries.iter().all(|e| e.q <= 16 && e.basis_match));
}
