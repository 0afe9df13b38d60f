//! End-to-end runs of the `oddkh` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

const TREFOIL: &str = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\nmark 1 1 1/2 1/2\n";

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn oddkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddkh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknot_has_two_generators() {
    let p = write("unknot.pd", "unknots 1\n");
    let o = oddkh(&["compute", p.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\n0 -1 1 -\n0 1 1 -\n"), "{out}");
}

#[test]
fn trefoil_matches_even_theory_mod_two() {
    let p = write("trefoil_mod2.pd", TREFOIL);
    let o = oddkh(&["compute", p.to_str().unwrap(), "--crosscheck-even", "--action"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("mod2: MATCH"), "{out}");
    assert!(out.contains("e*f* + f*e* = epsilon(f): yes"), "{out}");
}

#[test]
fn pretzel_crosscheck_matches() {
    let o = oddkh(&["pretzel", "2", "--full-crosscheck"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("torsion: Z/2"), "{out}");
    assert!(out.contains("crosscheck: MATCH"), "{out}");
}

#[test]
fn pretzel_crosscheck_is_skipped_for_large_n() {
    let o = oddkh(&["pretzel", "4", "--full-crosscheck"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("crosscheck: skipped"));
}

#[test]
fn self_checks_pass_in_both_flavors() {
    let p = write("trefoil_check.pd", TREFOIL);
    for flavor in ["X", "Y"] {
        let o = oddkh(&["check", p.to_str().unwrap(), "--flavor", flavor]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn flipped_edge_sign_is_reported() {
    let p = write("trefoil_flip.pd", TREFOIL);
    let o = oddkh(&["check", p.to_str().unwrap(), "--debug-flip-edge", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL d∘d = 0"));
    let o = oddkh(&["compute", p.to_str().unwrap(), "--debug-flip-edge", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("INTERNAL:"));
}

#[test]
fn malformed_input_is_an_input_error() {
    let p = write("bad.pd", "X[1,2\n");
    let o = oddkh(&["compute", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = oddkh(&["compute", "/nonexistent/file.pd"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic_and_parses() {
    let p = write("trefoil_json.pd", TREFOIL);
    let args = ["compute", p.to_str().unwrap(), "--action", "--json", "--crosscheck-even"];
    let (a, b) = (oddkh(&args), oddkh(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["diagram"]["crossings"], 3);
    assert_eq!(v["mod2"]["matches"], true);
    assert_eq!(v["homology"].as_array().unwrap().len(), 6);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&again).unwrap(), v);
}

#[test]
fn thread_count_does_not_change_results() {
    let one = oddkh(&["pretzel", "3", "--threads", "1", "--json"]);
    let many = oddkh(&["pretzel", "3", "--threads", "4", "--json"]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}
