use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn skewwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generated(dir: &TempDir, name: &str, family: &str, params: &str) -> PathBuf {
    let path = dir.path().join(name);
    let out = skewwalk(&["generate", "--family", family, "--params", params, "--out", s(&path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

const TRIANGLE: &str = "3 3\n0 1\n1 2\n2 0\n";

#[test]
fn analyze_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.txt", TRIANGLE);
    let out = skewwalk(&["analyze", "--graph", s(&g)]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["girth"]["length"], 3);
    assert_eq!(report["degrees"]["min_semi"], 1);
    assert_eq!(report["bipartite"], false);
}

#[test]
fn analyze_blow_up() {
    let dir = TempDir::new().unwrap();
    let g = generated(&dir, "b.txt", "blowup", "k=5,m=2");
    let report = stdout_json(&skewwalk(&["analyze", "--graph", s(&g)]));
    assert_eq!(report["degrees"]["min_semi"], 2);
    assert_eq!(report["girth"]["length"], 5);
    assert_eq!(report["bipartite"], false);
    assert_eq!(report["vertices"], 10);
}

#[test]
fn malformed_input_names_the_line() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "3 2\n0 1\n1 x\n");
    let out = skewwalk(&["analyze", "--graph", s(&g)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&skewwalk(&["frobnicate"])), 3);
    assert_eq!(code(&skewwalk(&["verify", "--ell", "12"])), 3);
    assert_eq!(code(&skewwalk(&["--help"])), 0);
    assert_eq!(code(&skewwalk(&["generate", "--family", "cube"])), 3);
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.txt", TRIANGLE);
    assert_eq!(code(&skewwalk(&["verify", "--graph", s(&g), "--ell", "0"])), 3);
    assert_eq!(code(&skewwalk(&["verify", "--graph", s(&g), "--ell", "-4"])), 3);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", TRIANGLE);
    let out = skewwalk(&["verify", "--graph", s(&tri), "--ell", "12"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!((v["exists"].clone(), v["witness"].clone()), (Value::Bool(true), Value::from(0)));
    let b = generated(&dir, "b.txt", "blowup", "k=5,m=2");
    let out = skewwalk(&["verify", "--graph", s(&b), "--ell", "12"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["exists"], false);
}

#[test]
fn find_walk_and_expand() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", TRIANGLE);
    let report_path = dir.path().join("report.json");
    let out = skewwalk(&["find-walk", "--graph", s(&tri), "--ell", "12", "--json", s(&report_path)]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["branch"], "short_girth");
    assert_eq!(report["ell"], "12");
    assert_eq!(report["expression"]["u"], "4");

    let out = skewwalk(&["expand", "--expr", s(&report_path), "--graph", s(&tri)]);
    assert_eq!(code(&out), 0);
    let walk = stdout_json(&out);
    assert_eq!(walk["length"], 12);
    assert_eq!(walk["valid"], true);
    assert_eq!(walk["vertices"].as_array().unwrap().len(), 13);

    // The expression alone is accepted too, and is checked against the graph.
    let expr = write(&dir, "expr.json", &report["expression"].to_string());
    let other = write(&dir, "other.txt", "3 3\n1 0\n2 1\n0 2\n");
    assert_eq!(code(&skewwalk(&["expand", "--expr", s(&expr), "--graph", s(&other)])), 1);
    assert_eq!(code(&skewwalk(&["expand", "--expr", s(&expr), "--limit", "5"])), 3);
}

#[test]
fn find_walk_not_found() {
    let dir = TempDir::new().unwrap();
    let b = generated(&dir, "b.txt", "blowup", "k=5,m=2");
    let out = skewwalk(&["find-walk", "--graph", s(&b), "--ell", "12"]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["not_found"]["reason"]["kind"], "not_bipartite");
    assert_eq!(v["not_found"]["diagnostics"]["girth"], 5);
}

#[test]
fn find_walk_with_huge_target() {
    let dir = TempDir::new().unwrap();
    let g = generated(&dir, "r.txt", "regime", "k=7,n=448");
    let ell = "10020000000000000000000000000000000000";
    let out = skewwalk(&["find-walk", "--graph", s(&g), "--ell", ell, "--k", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(v["ell"], ell);
    assert!(v["expression"]["u"].is_string() && v["expression"]["v"].is_string());
    assert_eq!(v["expression"]["total_length"], ell);
    assert_eq!(code(&skewwalk(&["verify", "--graph", s(&g), "--ell", ell])), 0);
}

#[test]
fn generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let out = skewwalk(&[
            "generate", "--family", "regime", "--params", "k=8,n=512", "--seed", "3", "--out", s(path),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = skewwalk(&["generate", "--family", "glued", "--params", "k=5,ell=6"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("9 "));
    assert_eq!(code(&skewwalk(&["generate", "--family", "regime", "--params", "k=7,n=100"])), 3);
}

#[test]
fn shipped_batch_file_passes() {
    let manifest = concat!(env!("CARGO_MANIFEST_DIR"), "/manifests/acceptance.json");
    let out = skewwalk(&["batch", manifest]);
    let v = stdout_json(&out);
    assert_eq!(code(&out), 0, "{v:#}");
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    let file: Value = serde_json::from_str(&std::fs::read_to_string(manifest).unwrap()).unwrap();
    let expected: Vec<&str> = file["rows"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, expected);
}

#[test]
fn batch_reports_failures() {
    let dir = TempDir::new().unwrap();
    let rows = r#"{"rows": [
        {"name": "blowup-no-12", "family": "blowup", "params": {"k": 5, "m": 2}, "ell": "12", "check": "oracle", "expect": false},
        {"name": "impossible", "family": "blowup", "params": {"k": 5, "m": 2}, "ell": "12", "check": "oracle", "expect": true}
    ]}"#;
    let file = write(&dir, "rows.json", rows);
    let out = skewwalk(&["batch", s(&file)]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["rows"][0]["pass"], true);
    assert_eq!(v["rows"][1]["pass"], false);

    let broken = write(&dir, "broken.json", r#"{"rows": [{"name": "x"}]}"#);
    assert_eq!(code(&skewwalk(&["batch", s(&broken)])), 3);
}

#[test]
fn run_manifests_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", TRIANGLE);
    let m1 = dir.path().join("m1.json");
    let m2 = dir.path().join("m2.json");
    let out1 = skewwalk(&["--manifest", s(&m1), "find-walk", "--graph", s(&tri), "--ell", "12"]);
    let out2 = skewwalk(&["find-walk", "--graph", s(&tri), "--ell", "12", "--manifest", s(&m2)]);
    assert_eq!(out1.stdout, out2.stdout);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&m1).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&m2).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a["command"], "find-walk");
    assert_eq!(a["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
    assert!(a["arguments"].as_array().unwrap().iter().all(|x| x != "--manifest"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let g = generated(&dir, "r.txt", "regime", "k=8,n=520");
    let run = |threads: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_skewwalk"));
        cmd.args(["find-walk", "--graph", s(&g), "--ell", "10500"]);
        if let Some(t) = threads {
            cmd.env("SKEWWALK_THREADS", t);
        }
        cmd.output().unwrap()
    };
    let default = run(None);
    let single = run(Some("1"));
    assert_eq!(code(&default), 0);
    assert_eq!(default.stdout, single.stdout);
    assert_eq!(code(&run(Some("many"))), 3);
}
