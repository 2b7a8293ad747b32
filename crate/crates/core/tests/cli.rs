use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnt-pancake")).args(args).output().expect("spawn binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_matches_golden() {
    let o = bin(&["analyze", "-7 3 -1 4 2 8 -6 -5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/analyze_n8.txt"));
}

#[test]
fn sort_trace_matches_golden() {
    let o = bin(&["sort", "3 2 1", "--trace"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/sort_321_trace.txt"));
}

#[test]
fn distance_matches_golden() {
    let o = bin(&["distance", "1 4 3 2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/distance_1432.txt"));
}

#[test]
fn distance_of_non_simple_reports_bound_only() {
    let o = bin(&["distance", "2 1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("lower_bound: 2"));
    assert!(out.contains("not simple"));
}

#[test]
fn sort_rejects_non_simple_with_precondition_code() {
    let o = bin(&["sort", "2 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not simple"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    for bad in ["1 1", "1 0", "1 x", "1 3"] {
        let o = bin(&["distance", bad]);
        assert_eq!(o.status.code(), Some(1), "input {bad}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn batch_mode_continues_after_errors() {
    let o = bin(&["distance", "3 2 1", "1 1", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("3 2 1\t") && lines[0].ends_with("psrd=5"));
    assert!(lines[1].starts_with("-1\t"));
}

#[test]
fn batch_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perms.txt");
    std::fs::write(&path, "3 2 1\n\n-2 -3 1\n").unwrap();
    let o = bin(&["sort", "--file", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn machine_output_is_json() {
    let o = bin(&["sort", "3 2 1", "--machine"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["flips"], serde_json::json!([2, 3, 2, 3, 2]));
}

#[test]
fn verify_small_n_passes() {
    let o = bin(&["verify", "4", "--lemma9"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_rejects_over_cap() {
    let o = bin(&["verify", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t4.bin");
    let p = path.to_str().unwrap();
    assert!(bin(&["verify", "4", "--dump-table", p]).status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..4], b"BPOT");
    assert_eq!(bytes.len(), 4 + 4 + 8 + 384);
    assert!(bin(&["verify", "4", "--load-table", p]).status.success());
}

#[test]
fn enumerate_simple_lists_examples() {
    let o = bin(&["enumerate-simple", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "1 2"));
    assert!(!out.lines().any(|l| l == "2 1"));
}

#[test]
fn random_is_reproducible() {
    let a = bin(&["random", "--n", "8", "--seed", "7", "--count", "3"]);
    let b = bin(&["random", "--n", "8", "--seed", "7", "--count", "3"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 3);
}

#[test]
fn random_simple_permutations_are_simple() {
    let o = bin(&["random", "--n", "6", "--seed", "1", "--simple", "--count", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for line in stdout(&o).lines() {
        let d = bin(&["distance", line]);
        assert!(stdout(&d).contains("simple: true"), "{line}");
    }
}
