//! End-to-end runs of the `rws-lab` binary.

use std::io::Write;
use std::process::Command;

use rws_lab::cli::{Report, Verdict};

fn rws(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rws-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn m(args: &[&str]) -> (i32, String, String) {
    let mut full = args.to_vec();
    full.extend(["--builtin", "cm-monoid"]);
    rws(&full)
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, _) = m(&full);
    (code, serde_json::from_str(&out).expect("valid report"))
}

fn temp_system(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("rws-lab-{}-{name}.rws", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_reports_complete() {
    let (code, out, _) = m(&["check"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("complete; critical pairs: 0\n"));
    assert!(out.ends_with("verdict: pass\n"));
}

#[test]
fn normalize_and_equal() {
    assert_eq!(m(&["normalize", "--word", "x e e y y"]).1, "1\nverdict: pass\n");
    assert_eq!(m(&["normalize", "--word", "e e e e"]).1, "e e\nverdict: pass\n");
    assert_eq!(m(&["equal", "--left", "e e e e", "--right", "e e"]).0, 0);
    assert_eq!(m(&["equal", "--left", "x", "--right", "y"]).0, 1);
}

#[test]
fn enumeration_and_counts() {
    let (code, out, _) = m(&["nf-enum", "--max-len", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1\nx\ny\ne\nverdict: pass\n");
    let (_, r) = json(&["nf-count", "--max-len", "3"]);
    assert_eq!(r.data["counts"], serde_json::json!([1, 3, 8, 19]));
}

#[test]
fn witnesses() {
    let (_, r) = json(&["inverse", "--side", "right", "--word", "x e"]);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.data["witness"], "e y y");
    let (code, r) = json(&["inverse", "--side", "left", "--word", "x"]);
    assert_eq!(code, 2);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    let (_, r) = json(&["j-witness", "--word", "e"]);
    assert_eq!(r.data["witness"], serde_json::json!({ "p": "x x", "q": "y" }));
}

#[test]
fn probes_pass() {
    assert_eq!(m(&["lang-verify"]).0, 0);
    assert_eq!(m(&["bisimple-probe", "--target", "e", "--cap", "6"]).0, 0);
    assert_eq!(m(&["tc"]).0, 0);
    let (code, out, _) = m(&["cong-probe", "--sum-bound", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("pair 1 | x : collapsed passes="));
    assert!(out.contains("tested=14 collapsed=14 inconclusive=0\n"));
}

#[test]
fn cong_close_classes() {
    let (code, r) = json(&["cong-close", "--pairs", "e=1", "--radius", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["generators_collapsed"], true);
    assert_eq!(r.data["classes"], 1);
    let (code, _, err) = m(&["cong-close", "--pairs", "e", "--radius", "4"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: "));
}

#[test]
fn exit_codes_for_errors() {
    let (code, _, err) = rws(&["check"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: "));
    let (code, _, _) = rws(&["check", "--system", "/nonexistent/file"]);
    assert_eq!(code, 3);
    let (code, _, err) = m(&["normalize", "--word", "q"]);
    assert_eq!(code, 3);
    assert_eq!(err, "error: unknown symbol `q`\n");
    let bad = temp_system("syntax", "alphabet: a b\nrules:\na b => a\n");
    let (code, _, err) = rws(&["check", "--system", &bad]);
    assert_eq!(code, 3);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn incomplete_custom_system() {
    let path = temp_system("incomplete", "alphabet: a b\nrules:\na a -> a\na a b -> b\n");
    let (code, out, _) = rws(&["check", "--system", &path]);
    assert_eq!(code, 1);
    assert!(out.starts_with("incomplete; critical pairs: 2\n"), "{out}");
    assert!(out.contains("unjoinable a a b -> a b | b"), "{out}");
    // searches need unique normal forms
    let (code, _, err) = rws(&["j-witness", "--system", &path, "--word", "a"]);
    assert_eq!(code, 3);
    assert!(err.contains("not complete"));
    let (code, out, _) = rws(&["equal", "--system", &path, "--left", "a b", "--right", "b"]);
    assert_eq!(code, 2);
    assert!(out.contains("not certified"));
}

#[test]
fn custom_system_language() {
    let path = temp_system("free", "alphabet: a b\nrules:\nb a -> a b\n");
    let (code, out, _) = rws(&["lang-verify", "--system", &path, "--regex", "a* b*"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = rws(&["lang-verify", "--system", &path, "--regex", "a* b* | b a"]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = rws(&["lang-verify", "--system", &path]);
    assert_eq!(code, 0);
}

#[test]
fn json_round_trips_and_matches_text() {
    let cases: &[&[&str]] = &[
        &["check"],
        &["normalize", "--word", "y x e"],
        &["inverse", "--side", "right", "--word", "e", "--cap", "4"],
        &["j-witness", "--word", "y y e x"],
        &["scenarios"],
        &["tc"],
    ];
    for args in cases {
        let (code, text, _) = m(args);
        let (jcode, report) = json(args);
        assert_eq!(code, jcode, "{args:?}");
        let last = text.lines().last().unwrap();
        assert_eq!(last, format!("verdict: {}", report.verdict.as_str()));
        let again: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(again, report);
        assert_eq!(report.system, "cm-monoid");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["cong-probe", "--sum-bound", "3", "--format", "json"];
    let (_, a, _) = m(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let (_, b, _) = m(&with_jobs);
    assert_eq!(a, b);
    assert_eq!(m(&["scenarios"]).1, m(&["scenarios", "--jobs", "3"]).1);
}

#[test]
fn timing_goes_to_stderr() {
    let (code, out, err) = m(&["tc", "--timing"]);
    assert_eq!(code, 0);
    assert!(!out.contains("timing"));
    assert!(err.starts_with("timing: "));
}
