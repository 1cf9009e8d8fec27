mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{BANDS, SPLIT};
use symlearn::algebra::Algebra;
use symlearn::sample::Sample;
use symlearn::sfa::Sfa;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlearn")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn member_of_bands() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "bands.sfa", BANDS);
    assert_eq!(run(&["decide", "member", s(&f), "0 100"]).status.code(), Some(0));
    assert_eq!(run(&["decide", "member", s(&f), "0 200"]).status.code(), Some(1));
    assert_eq!(run(&["decide", "member", s(&f), ""]).status.code(), Some(1));
}

#[test]
fn char_sample_has_seven_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "bands.sfa", BANDS);
    let out = dir.path().join("s.txt");
    let o = run(&["learn", "char", s(&f), "-o", s(&out)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert_eq!(Sample::parse(&text, Algebra::IntervalNat).unwrap().to_string(), text);
}

#[test]
fn equiv_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "a.sfa", SPLIT);
    let o = run(&["decide", "equiv", s(&f), s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "yes\n");
}

#[test]
fn non_equivalence_prints_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.sfa", BANDS);
    let b = put(dir.path(), "b.sfa", SPLIT);
    let o = run(&["decide", "equiv", s(&a), s(&b)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: "));
    assert_eq!(run(&["decide", "empty", s(&a)]).status.code(), Some(1));
}

#[test]
fn complement_product_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.sfa", BANDS);
    let c = dir.path().join("c.sfa");
    let p = dir.path().join("p.sfa");
    assert!(run(&["op", "complement", s(&a), "-o", s(&c)]).status.success());
    assert!(run(&["op", "product", s(&a), s(&c), "-o", s(&p)]).status.success());
    assert_eq!(run(&["decide", "empty", s(&p)]).status.code(), Some(0));
    let u = dir.path().join("u.sfa");
    assert!(run(&["op", "union", s(&a), s(&c), "-o", s(&u)]).status.success());
    assert_eq!(run(&["decide", "include", s(&a), s(&u)]).status.code(), Some(0));
    assert_eq!(run(&["decide", "include", s(&u), s(&a)]).status.code(), Some(1));
}

#[test]
fn transforms_preserve_language() {
    let dir = tempfile::tempdir().unwrap();
    let nfa = put(
        dir.path(),
        "n.sfa",
        "algebra interval-nat\nstates a b\ninitial a\naccepting b\ntrans a a [0,inf)\ntrans a b [5,9) | [20,30)\n",
    );
    for kind in ["neat", "normalize", "feasible", "complete", "determinize", "minimize"] {
        let out = dir.path().join(format!("{kind}.sfa"));
        let o = run(&["transform", kind, s(&nfa), "-o", s(&out)]);
        assert!(o.status.success(), "{kind}: {}", stderr(&o));
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(Sfa::parse(&text).unwrap().to_string(), text);
        assert_eq!(run(&["decide", "equiv", s(&out), s(&nfa)]).status.code(), Some(0), "{kind}");
    }
    let o = run(&["transform", "minimize", "--form", "normalized", s(&nfa)]);
    assert!(o.status.success());
    assert!(Sfa::parse(&stdout(&o)).unwrap().classify().normalized);
}

#[test]
fn learn_infer_and_decontaminate() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "bands.sfa", BANDS);
    let sample = dir.path().join("s.txt");
    assert!(run(&["learn", "char", s(&f), "-o", s(&sample)]).status.success());
    let mut text = std::fs::read_to_string(&sample).unwrap();
    text.push_str("- 150\n");
    let dirty = put(dir.path(), "dirty.txt", &text);
    let o = run(&["learn", "decontaminate", s(&dirty)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(&sample).unwrap());
    let h = dir.path().join("h.sfa");
    assert!(run(&["learn", "infer", s(&dirty), "-o", s(&h)]).status.success());
    assert_eq!(run(&["decide", "equiv", s(&h), s(&f)]).status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["op", "product"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = put(dir.path(), "bad.sfa", "algebra interval-nat\nstates a\ninitial a\ntrans a a [3,\n");
    let o = run(&["decide", "empty", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let missing = dir.path().join("missing.sfa");
    assert_eq!(run(&["decide", "empty", s(&missing)]).status.code(), Some(2));
}

#[test]
fn precondition_violation_names_flag() {
    let dir = tempfile::tempdir().unwrap();
    let nfa = put(
        dir.path(),
        "n.sfa",
        "algebra interval-nat\nstates a b\ninitial a\naccepting b\ntrans a a [0,inf)\ntrans a b [0,5)\n",
    );
    let o = run(&["learn", "char", s(&nfa)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("deterministic"), "{}", stderr(&o));
}

#[test]
fn qlearn_demo_meets_bound() {
    let o = run(&["qlearn", "demo", "--prop", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound=7"));
}

#[test]
fn bench_roundtrip_tally() {
    let o = run(&["bench", "roundtrip", "--seed", "3", "--count", "25", "--max-states", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "roundtrip: 25/25 passed\n");
}
