use std::fs;
use std::process::{Command, Output};

use ngc::builtin::by_name;
use ngc::text::format_presentation;

fn ngc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngc"))
        .args(args)
        .env_remove("NGC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bracket_of_elements() {
    let o = ngc(&["compute", "--ring", "builtin:matrix2x2scale2", "--op", "bracket", "--n", "2", "--elems", "2e12,2e22"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "4e12");
}

#[test]
fn bracket_subgroup_and_center() {
    let o = ngc(&["compute", "--ring", "builtin:strictupper4mod2", "--op", "bracket", "--n", "3"]);
    assert_eq!(stdout(&o), "rank 1\norder 2\ne14\n");
    let o = ngc(&["compute", "--ring", "builtin:strictupper3mod2", "--op", "center"]);
    assert_eq!(stdout(&o), "rank 1\norder 2\ne13\n");
}

#[test]
fn ideal_and_closure() {
    let o = ngc(&["compute", "--ring", "builtin:matrix2x2", "--op", "ideal", "--elems", "2e12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rank 4\n2e11\n2e12\n2e21\n2e22\n");
    let o = ngc(&["compute", "--ring", "builtin:matrix2x2mod2", "--op", "closure", "--n", "3", "--pos", "1", "--elems", "e12"]);
    assert!(stdout(&o).starts_with("rank 4\n"));
}

#[test]
fn validate_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.ring");
    fs::write(&good, format_presentation(by_name("upper3mod2").unwrap().presentation())).unwrap();
    let o = ngc(&["validate", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("rank 6"));

    // (aa)a = ba = 0 but a(aa) = ab = a.
    let bad = dir.path().join("bad.ring");
    fs::write(&bad, "name: bad\ndim: 2\nmodulus: 0\nlabels: a b\nproducts:\n1 1 -> 2:1\n1 2 -> 1:1\n").unwrap();
    let o = ngc(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not associative"), "{}", stderr(&o));

    let o = ngc(&["validate", dir.path().join("missing.ring").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["compute", "--ring", "builtin:nope", "--op", "center"],
        vec!["compute", "--ring", "builtin:matrix2x2mod5", "--op", "bracket", "--n", "3", "--beta", "5"],
        vec!["compute", "--ring", "builtin:matrix2x2mod4", "--op", "bracket", "--n", "3", "--beta", "2"],
        vec!["compute", "--ring", "builtin:matrix2x2mod2", "--op", "bracket", "--elems", "e12,e99"],
        vec!["check", "nonexistent"],
        vec!["fuzz", "--iters", "10", "--seed", "1", "--identity", "nope"],
        vec!["fuzz", "--iters", "10"],
        vec!["frobnicate"],
    ] {
        assert_eq!(ngc(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exceeded_is_reported_and_override_works() {
    let args = ["compute", "--ring", "builtin:niltrunc2x12mod2", "--op", "bracket", "--n", "5"];
    let o = ngc(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds budget"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_ngc")).args(args).env("NGC_BUDGET", "100").output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_ngc")).args(args).env("NGC_BUDGET", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fuzz_exit_codes() {
    let o = ngc(&["fuzz", "--iters", "200", "--seed", "5", "--identity", "three_bracket_expansion"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ngc(&["fuzz", "--iters", "200", "--seed", "5", "--identity", "corrupted_right_absorption_n3", "--ring", "matrix2x2mod3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inputs"));
}

#[test]
fn check_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = ngc(&["check", "example1", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let (ta, tb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v["format"], 1);
    let scenarios = v["scenarios"].as_array().unwrap();
    assert_eq!(scenarios.len(), 1);
    assert_eq!(scenarios[0]["name"], "example1");
    assert_eq!(scenarios[0]["status"], "pass");
    assert!(scenarios[0].get("elapsed_ms").is_none());
}

#[test]
fn self_test_fails_exactly_once() {
    let o = ngc(&["check", "example2", "--self-test", "--json", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = v["scenarios"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["status"] == "fail")
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(!failed[0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn list_names_scenarios() {
    let o = ngc(&["list"]);
    assert!(stdout(&o).contains("thm2_1"));
    assert!(stdout(&o).contains("three_bracket_expansion"));
}
