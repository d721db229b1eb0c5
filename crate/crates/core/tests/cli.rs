//! End-to-end CLI checks against stored goldens for the q = 17 example.

use std::path::{Path, PathBuf};
use std::process::Command;

use ghrs::cli::run;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn q17() -> String {
    manifest().join("data/q17.code").to_str().unwrap().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest().join("tests/golden").join(name)).unwrap()
}

fn ghrs(args: &[&str]) -> ghrs::cli::CommandResult {
    let mut argv = vec!["ghrs".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn tmp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ghrs-cli-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn goldens_match() {
    let q = q17();
    let cases: [(&[&str], &str); 6] = [
        (&["genmatrix", &q, "--form", "rref", "--order", "row"], "q17_g_rref.txt"),
        (&["paritycheck", &q], "q17_h.txt"),
        (&["tanner", &q, "--format", "alist"], "q17.alist"),
        (&["tanner", &q, "--format", "dot"], "q17.dot"),
        (&["sparsity", &q], "q17_sparsity.txt"),
        (&["mindist", &q], "q17_mindist.txt"),
    ];
    for (args, name) in cases {
        let out = ghrs(args);
        assert_eq!(out.status, 0, "{args:?}: {}", out.stderr);
        assert_eq!(out.stdout, golden(name), "{args:?}");
    }
}

#[test]
fn mindist_reports_mds() {
    let out = ghrs(&["mindist", &q17()]);
    assert!(out.stdout.contains("d = 19, MDS: yes"));
    let m = ghrs(&["mindist", &q17(), "--machine"]);
    assert_eq!(m.stdout, "dimension: 3\ndistance: 19\ndefect: 0\n");
}

#[test]
fn mindist_independent_of_jobs() {
    let one = ghrs(&["mindist", &q17(), "--jobs", "1"]);
    let four = ghrs(&["mindist", &q17(), "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn mindist_budget_is_input_error() {
    let out = ghrs(&["mindist", &q17(), "--budget", "100"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("budget"));
}

#[test]
fn outputs_are_deterministic() {
    let q = q17();
    for args in [
        vec!["sparsity", q.as_str()],
        vec!["dual", q.as_str()],
        vec!["verify-duality", q.as_str()],
        vec!["tanner", q.as_str(), "--format", "dot"],
        vec!["genmatrix", q.as_str(), "--form", "forward", "--order", "col"],
    ] {
        assert_eq!(ghrs(&args), ghrs(&args), "{args:?}");
    }
}

#[test]
fn machine_keys() {
    let out = ghrs(&["sparsity", &q17(), "--machine"]);
    let keys: Vec<&str> = out.stdout.lines().map(|l| l.split(':').next().unwrap()).collect();
    for k in ["zeros", "nonzeros", "sparsity_pct", "condition"] {
        assert!(keys.contains(&k), "{k} missing");
    }
    assert!(out.stdout.contains("condition: cond2\n"));
    let g = ghrs(&["genmatrix", &q17(), "--machine"]);
    assert!(g.stdout.starts_with("dimension: 3\n"));
}

#[test]
fn encode_outputs() {
    let out = ghrs(&["encode", &q17(), "--poly", "1"]);
    assert_eq!(out.status, 0);
    let first: Vec<&str> = out.stdout.lines().take(2).collect();
    assert_eq!(first, ["8 9 10", "0 0 0"]);
    assert!(out.stdout.contains("row_major: 8 9 10 0 0 0"));
    assert!(out.stdout.contains("col_major: 8 0 0 0 0 0 0 9 0"));
    let zero = ghrs(&["encode", &q17(), "--poly", "0"]);
    assert!(zero.stdout.starts_with(&"0 0 0\n".repeat(7)));
    assert!(zero.stdout.contains("NRT weight: 0"));
    assert_eq!(ghrs(&["encode", &q17(), "--poly", "1,2,3,4"]).status, 2);
}

#[test]
fn duality_failure_exits_1() {
    let out = ghrs(&["verify-duality", &q17()]);
    assert_eq!(out.status, 1);
    assert!(out.stdout.ends_with("duality: fail\n"));
    let grs = tmp_file("grs.code", "field: 7\nalpha: 0,1,3,5\nt: 2\nV:\n2 6 1 3\n");
    let ok = ghrs(&["verify-duality", grs.to_str().unwrap()]);
    assert_eq!(ok.status, 0, "{}", ok.stdout);
    assert!(ok.stdout.ends_with("duality: pass\n"));
}

#[test]
fn dual_prints_code_file() {
    let grs = tmp_file("grs2.code", "field: 7\nalpha: 0,1,3,5\nt: 1\nV:\n2 6 1 3\n");
    let out = ghrs(&["dual", grs.to_str().unwrap()]);
    assert_eq!(out.status, 0);
    let code_text = out.stdout.split("dual code:\n").nth(1).unwrap();
    let dual = ghrs::GhrsCode::parse(code_text).unwrap();
    assert_eq!(dual.t(), 3);
}

#[test]
fn qc_round_trip_through_files() {
    let spec = manifest().join("data/q7.qc");
    let made = ghrs(&["qc-make", spec.to_str().unwrap()]);
    assert_eq!(made.status, 0);
    assert_eq!(made.stdout, "field: 7\nalpha: 1,2,4\nt: 3\nV:\n1 1 1\n1 2 4\n");
    let code = tmp_file("qc.code", &made.stdout);
    let check = ghrs(&["qc-check", code.to_str().unwrap()]);
    assert_eq!(check.status, 0);
    assert!(check.stdout.contains("quasi-cyclic: yes"));
    assert!(check.stdout.contains("ratio condition: yes"));
    assert!(check.stdout.contains("on monomials: ok"));
    assert_eq!(ghrs(&["qc-check", code.to_str().unwrap(), "--machine"]).stdout, "qc: yes\n");
    let broken = tmp_file("qc_bad.code", "field: 7\nalpha: 1,2,4\nt: 3\nV:\n1 3 1\n1 2 4\n");
    let bad = ghrs(&["qc-check", broken.to_str().unwrap()]);
    assert_eq!(bad.status, 1);
    assert!(bad.stdout.contains("ratio condition: no"));
    let override_t = ghrs(&["qc-make", spec.to_str().unwrap(), "--t", "6"]);
    assert!(override_t.stdout.contains("t: 6\n"));
}

#[test]
fn malformed_inputs_exit_2() {
    let bad_v = tmp_file("bad.code", "field: 7\nalpha: 1,2\nt: 1\nV:\n1 9\n");
    assert_eq!(ghrs(&["paritycheck", bad_v.to_str().unwrap()]).status, 2);
    let dup = tmp_file("dup.code", "field: 7\nalpha: 1,1\nt: 1\nV:\n1 2\n");
    let out = ghrs(&["paritycheck", dup.to_str().unwrap()]);
    assert_eq!(out.status, 2);
    assert_eq!(out.stderr.lines().count(), 1);
    let bad_spec = tmp_file("bad.qc", "q: 7\nr: 2\nalpha: 2\nseed: 1\nt: 1\n");
    assert_eq!(ghrs(&["qc-make", bad_spec.to_str().unwrap()]).status, 2);
}

#[test]
fn binary_matches_library() {
    let bin = Path::new(env!("CARGO_BIN_EXE_ghrs"));
    let out = Command::new(bin).args(["sparsity", &q17()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("q17_sparsity.txt"));
    let bad = Command::new(bin).args(["nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
