use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mirrorcat::mirror::MirrorReport;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fx(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

#[test]
fn validate_reports_counts_and_names_defects() {
    let o = run(&["validate", &fx("categories/fib.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pentagon: pass (27 instances)"), "{}", stdout(&o));

    let o = run(&["validate", &fx("defects/fib-f-negated.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(τ,τ,τ,τ;τ)"), "{}", stdout(&o));
}

#[test]
fn analyze_canonical_ising_passes() {
    let o = run(&["analyze", &fx("algebras/canonical-ising.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("braid-reversed equivalence: certified"));
}

#[test]
fn analyze_json_round_trips() {
    let o = run(&["--json", "analyze", &fx("algebras/canonical-fib.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r: MirrorReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(r.passed());
    assert_eq!(serde_json::to_value(&r).unwrap(), v["report"]);
}

#[test]
fn non_reversed_product_fails_with_exit_one() {
    let o = run(&["analyze", &fx("defects/algebra-twist.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("monodromy: FAIL"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"labels\": [\n").unwrap();
    let o = run(&["validate", &bad.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(run(&["validate", "builtin:nothing"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/a.json"]).status.code(), Some(2));
}

#[test]
fn canonical_then_analyze_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("z3.json");
    let o = run(&["canonical", "builtin:pointed:3:1", "--out", &alg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["check-algebra", &alg.to_string_lossy()]).status.code(), Some(0));
    assert_eq!(run(&["analyze", &alg.to_string_lossy()]).status.code(), Some(0));
    let o = run(&["keylemma", &alg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches(" ok").count(), 3);
}

#[test]
fn canonical_with_target_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    std::fs::write(&map, r#"{"0": "0", "1": "2", "2": "1"}"#).unwrap();
    let alg = dir.path().join("a.json");
    let o = run(&[
        "canonical",
        "builtin:pointed:3:1",
        "--target",
        "builtin:pointed:3:-1",
        "--map",
        &map.to_string_lossy(),
        "--out",
        &alg.to_string_lossy(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["analyze", &alg.to_string_lossy()]).status.code(), Some(0));

    // the identity map into the same category is not braid-reversing
    std::fs::write(&map, r#"{"0": "0", "1": "1", "2": "2"}"#).unwrap();
    let o = run(&["canonical", "builtin:fib", "--target", "builtin:fib", "--map", &map.to_string_lossy()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn induce_reports_carrier_and_locality() {
    let o = run(&["induce", &fx("algebras/canonical-fib.json"), "(1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("local: yes"), "{s}");
    let o = run(&["--json", "induce", &fx("algebras/canonical-fib.json"), "(τ,1)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["local"], false);
    assert_eq!(v["carrier"].as_array().unwrap().len(), 3);
}

#[test]
fn dims_of_category_and_algebra() {
    let o = run(&["dims", "builtin:ising"]);
    assert!(stdout(&o).contains("global dimension = 4"), "{}", stdout(&o));
    let o = run(&["dims", &fx("algebras/canonical-fib.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("≈ 3.6180"));
}

#[test]
fn gen_writes_loadable_categories() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z4.json");
    let o = run(&["gen", "pointed", "--n", "4", "--q", "2", "--out", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["validate", &p.to_string_lossy()]).status.code(), Some(0));
    let out = run(&["gen", "fixtures", "--out", &dir.path().join("reg").to_string_lossy()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("reg/defects/algebra-fusion.json").is_file());
}

#[test]
fn jobs_flag_does_not_change_output() {
    let a = run(&["--jobs", "1", "analyze", &fx("algebras/canonical-ising.json")]);
    let b = run(&["--jobs", "4", "analyze", &fx("algebras/canonical-ising.json")]);
    assert_eq!(a.stdout, b.stdout);
}
