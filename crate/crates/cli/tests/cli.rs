use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_finsep"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn ex1() -> String {
    data("example1.pres").display().to_string()
}

fn ex2() -> String {
    data("example2.pres").display().to_string()
}

#[test]
fn decide_homogeneous_relation() {
    let o = run(&["decide", "-p", "3", "-f", "x^2 - y^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("separable: yes; factors: (x+y)(x+2y)"), "{}", stdout(&o));
    let o = run(&["decide", "-p", "3", "-f", "(x+y)^2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("factors: (x+y)^2"));
    let o = run(&["decide", "-p", "3", "-f", "x^2 + y - y^2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn separate_first_example_not_found() {
    let o = run(&["separate", "--pres", &ex1(), "--target", "b", "--subring", "a-b", "--max", "8"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("outcome: NotFound"));
}

#[test]
fn separate_second_example_witness() {
    let o = run(&["separate", "--pres", &ex2(), "--target", "a", "--subring", "b"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("outcome: witness"));
}

#[test]
fn nf_first_example_identity() {
    let o = run(&["nf", "--pres", &ex1(), "(a-b)^2 + 2*(a-b)*b + b"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("nf: 0"));
    let inline = run(&["nf", "-p", "3", "--relation", "x^2 + y - y^2", "(a-b)^2 + 2*(a-b)*b + b"]);
    assert_eq!(code(&inline), 0);
    assert_eq!(stdout(&inline), stdout(&o));
}

#[test]
fn searches_exit_codes() {
    assert_eq!(code(&run(&["intdep", "--pres", &ex1(), "--dx", "4", "--dy", "4"])), 0);
    assert_eq!(code(&run(&["intdep", "--pres", &ex1(), "--dx", "1", "--dy", "1"])), 2);
    assert_eq!(code(&run(&["algdeg", "--pres", &ex2()])), 0);
    assert_eq!(code(&run(&["algdeg", "--pres", &ex2(), "--dx", "2"])), 2);
    assert_eq!(code(&run(&["integral", "--pres", &ex1(), "a", "--kmax", "6"])), 2);
    let o = run(&["integral", "--pres", &ex2(), "b", "--quotient", "1,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("annihilator: t^2 + t"));
    assert_eq!(code(&run(&["member", "--pres", &ex1(), "--target", "b", "--subring", "a-b", "--kmax", "8"])), 2);
    let o = run(&["member", "--pres", &ex1(), "--target", "(a-b)^3", "--subring", "a-b"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certificate: t^3"));
}

#[test]
fn factor_separable_torsion() {
    let o = run(&["factor", "-p", "3", "-f", "t^4 + 2*t^2 + 1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("factorization: (t^2 + 1)^2"));
    assert_eq!(code(&run(&["separable", "-p", "3", "-f", "t^4 + 2*t^2 + 1"])), 1);
    assert_eq!(code(&run(&["separable", "-p", "2", "-f", "t^2 + t + 1"])), 0);
    let o = run(&["torsion", "--ring", "Z6xZ10", "-k", "30"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("direct_sum: yes"));
    assert_eq!(code(&run(&["torsion", "--ring", "Z12", "-k", "12"])), 1);
}

#[test]
fn usage_and_parse_errors_exit_3() {
    for args in [
        &["decide", "-p", "3", "-f", "x^-1"][..],
        &["decide", "-p", "4", "-f", "x*y"],
        &["decide", "-p", "3", "-f", "x + z"],
        &["factor", "-p", "3"],
        &["frobnicate"],
        &["nf", "a"],
        &["intdep", "--pres", "/nonexistent/file.pres"],
        &["intdep", "-p", "3", "--relation", "y^2 - x", "--dx", "2"],
        &["intdep", "-p", "3", "--relation", "x^2 + y", "--dx", "0"],
        &["nf", "-p", "3", "--relation", "x^2 + y", "a + 1"],
        &["torsion", "--ring", "Q7", "-k", "2"],
        &["integral", "-p", "3", "--relation", "x^2 + y", "a", "--quotient", "1"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 3, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn malformed_presentation_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "p = 3\nrelations = x^2").unwrap();
    let o = run(&["nf", "--pres", f.path().to_str().unwrap(), "a"]);
    assert_eq!(code(&o), 3);
    let mut g = tempfile::NamedTempFile::new().unwrap();
    writeln!(g, "# comment\n\np = 3\nrelation = x^2 + y - y^2  # first example").unwrap();
    let o = run(&["nf", "--pres", g.path().to_str().unwrap(), "a^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("nf: b^2 + 2*b"));
}

const INVOCATIONS: &[&[&str]] = &[
    &["factor", "-p", "5", "-f", "t^8 + 3*t^5 + t^2 + 4*t + 2"],
    &["factor", "-p", "2", "-f", "t^12 + t^9 + t^4 + t + 1", "--seed", "7"],
    &["separable", "-p", "3", "-f", "x^3 - x*y^2"],
    &["decide", "-p", "5", "-f", "x^4 - y^4"],
    &["torsion", "--ring", "Z6xZ10", "-k", "30"],
];

fn pres_invocations() -> Vec<Vec<String>> {
    let (e1, e2) = (ex1(), ex2());
    let v = |a: &[&str]| a.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        v(&["nf", "--pres", &e1, "a^3*b + a*b^2"]),
        v(&["member", "--pres", &e2, "--target", "a*b + b^2", "--subring", "a + b"]),
        v(&["intdep", "--pres", &e1, "--dx", "4", "--dy", "4"]),
        v(&["integral", "--pres", &e1, "a*b", "--kmax", "5"]),
        v(&["algdeg", "--pres", &e1]),
        v(&["separate", "--pres", &e1, "--target", "b", "--subring", "a-b", "--max", "6"]),
        v(&["separate", "--pres", &e2, "--target", "a", "--subring", "b"]),
    ]
}

fn all_invocations() -> Vec<Vec<String>> {
    let mut all: Vec<Vec<String>> = INVOCATIONS.iter().map(|a| a.iter().map(|s| s.to_string()).collect()).collect();
    all.extend(pres_invocations());
    all
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in all_invocations() {
        for json in [false, true] {
            let mut a = args.clone();
            if json {
                a.push("--json".into());
            }
            let first = bin().args(&a).output().unwrap();
            let second = bin().args(&a).output().unwrap();
            assert_eq!(first.stdout, second.stdout, "{a:?}");
            assert_eq!(first.status.code(), second.status.code(), "{a:?}");
        }
    }
}

#[test]
fn json_mirrors_every_text_field() {
    for args in all_invocations() {
        let text = bin().args(&args).output().unwrap();
        let mut a = args.clone();
        a.push("--json".into());
        let json = bin().args(&a).output().unwrap();
        assert_eq!(text.status.code(), json.status.code(), "{args:?}");
        let value: Value = serde_json::from_slice(&json.stdout).expect("valid JSON");
        let obj = value.as_object().expect("object");
        let line = String::from_utf8(text.stdout).unwrap();
        let keys: Vec<&str> = line.trim_end().split("; ").filter_map(|f| f.split_once(": ").map(|(k, _)| k)).collect();
        assert!(!keys.is_empty());
        for k in &keys {
            assert!(obj.contains_key(*k), "{args:?}: JSON lacks {k}");
        }
        let json_keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(json_keys, keys, "{args:?}: key order");
    }
}

#[test]
fn json_error_object() {
    let o = run(&["decide", "-p", "3", "-f", "x^", "--json"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("error").and_then(Value::as_str).is_some());
}
