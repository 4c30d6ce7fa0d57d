use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BELL: &str = "grid 2 2\nL (0,0) (1,1)\n";

fn gridstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridstate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn build_cross_hatch(dir: &Path, args: &[&str]) -> String {
    let path = dir.join("hatch.grid").to_string_lossy().into_owned();
    let mut full = vec!["build", "cross-hatch"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = gridstate(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn verify_cross_hatch_is_bound_entangled() {
    let dir = TempDir::new().unwrap();
    for kind in ["l", "q", "hybrid"] {
        let spec = build_cross_hatch(dir.path(), &["3", "4", "--kind", kind, "--weight", "5/2"]);
        let out = gridstate(&["verify", &spec]);
        assert!(out.status.success());
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["verdict"], "bound-entangled", "kind {kind}");
        assert_eq!(report["degree_equal"], true);
        assert_eq!(report["proof"]["proven"], true);
    }
}

#[test]
fn check_bell_is_npt() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "bell.grid", BELL);
    let out = gridstate(&["check", &spec, "--pretty"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "entangled-NPT");
    assert_eq!(report["interpretation"], "L");
    assert!((report["min_eig"].as_f64().unwrap() + 0.5).abs() < 1e-8);
    assert!(report["proof"].is_null());
}

#[test]
fn stdin_and_interpretation_flag() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gridstate"))
        .args(["check", "-", "--interpretation", "Q"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(BELL.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(!out.status.success(), "an L-graph read as Q is a mismatch");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("gridstate: "));
}

#[test]
fn parse_errors_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "loop.grid", "grid 2 2\nL (0,0) (0,0)\n");
    let out = gridstate(&["check", &spec]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn inconclusive_is_not_an_error() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "sep.grid", "grid 2 2\nL (0,0) (0,1)\n");
    let out = gridstate(&["surgery", &spec]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("reason"));
    let out = gridstate(&["surgery", &spec, "--json"]);
    let tree: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(tree["proven"], false);
}

#[test]
fn batch_reports_each_file_and_fails_on_bad_input() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a_bell.grid", BELL);
    write(dir.path(), "b_broken.grid", "grid 2 2\nL (0,0) 1,1)\n");
    write(dir.path(), "c_hyper.grid", "hypergrid 2 2\nH (0,0) (0,1) (1,0)\n");
    write(dir.path(), ".hidden", "not a spec");
    let out = gridstate(&["--jobs", "2", "batch", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["file"], "a_bell.grid");
    assert_eq!(lines[0]["ok"], true);
    assert_eq!(lines[0]["report"]["verdict"], "entangled-NPT");
    assert_eq!(lines[1]["ok"], false);
    assert!(lines[1]["error"].as_str().unwrap().contains("line 2"));
    assert_eq!(lines[2]["report"]["interpretation"], "hypergraph");

    fs::remove_file(dir.path().join("b_broken.grid")).unwrap();
    let out = gridstate(&["batch", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn verdicts_do_not_depend_on_jobs() {
    let dir = TempDir::new().unwrap();
    build_cross_hatch(dir.path(), &["3", "3", "--kind", "q"]);
    write(dir.path(), "bell.grid", BELL);
    let path = dir.path().to_str().unwrap();
    let one = gridstate(&["--jobs", "1", "batch", path, "--resolution", "8"]);
    let eight = gridstate(&["--jobs", "8", "batch", path, "--resolution", "8"]);
    let again = gridstate(&["--jobs", "8", "batch", path, "--resolution", "8"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(eight.stdout, again.stdout);
}

#[test]
fn render_formats() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "bell.grid", BELL);
    let dot = stdout(&gridstate(&["render", &spec, "--format", "dot"]));
    assert!(dot.starts_with("graph grid {"));
    assert_eq!(dot.matches("style=dashed").count(), 1);
    let ascii = stdout(&gridstate(&["render", &spec, "--format", "ascii"]));
    assert!(ascii.contains("L (0,0) (1,1)"));
    assert!(!gridstate(&["render", &spec, "--format", "svg"]).status.success());
}

#[test]
fn matrix_dumps() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "bell.grid", BELL);
    let json = stdout(&gridstate(&["matrix", &spec, "--which", "density", "--format", "json"]));
    let rows: Vec<Vec<String>> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows[0], ["1/2", "0/1", "0/1", "-1/2"]);
    let csv = stdout(&gridstate(&["matrix", &spec, "--which", "ppt", "--format", "csv"]));
    assert_eq!(csv.lines().nth(1).unwrap(), "0,0,-0.5,0");
    let empty = write(dir.path(), "empty.grid", "grid 2 2\n");
    assert!(!gridstate(&["matrix", &empty, "--which", "density"]).status.success());
}

#[test]
fn build_compositions() {
    let dir = TempDir::new().unwrap();
    let outer = dir.path().join("outer.grid").to_string_lossy().into_owned();
    let inner = dir.path().join("inner.grid").to_string_lossy().into_owned();
    assert!(gridstate(&["build", "cross-hatch", "5", "5", "-o", &outer]).status.success());
    assert!(gridstate(&["build", "cross-hatch", "3", "3", "-o", &inner]).status.success());

    let embedded = stdout(&gridstate(&["build", "embed", &outer, &inner, "--at", "1,1"]));
    assert!(embedded.starts_with("grid 5 5\n"));
    assert_eq!(embedded.lines().count(), 1 + 12);
    let spec = write(dir.path(), "embedded.grid", &embedded);
    let report: Value = serde_json::from_str(&stdout(&gridstate(&["verify", &spec]))).unwrap();
    assert_eq!(report["verdict"], "bound-entangled");

    let tiled = stdout(&gridstate(&[
        "build",
        "tile",
        "--size",
        "5,5",
        &format!("{inner}@0,0"),
        &format!("{inner}@2,2"),
    ]));
    assert_eq!(tiled.lines().count(), 1 + 8);
    let spec = write(dir.path(), "tiled.grid", &tiled);
    let report: Value = serde_json::from_str(&stdout(&gridstate(&["verify", &spec]))).unwrap();
    assert_eq!(report["verdict"], "bound-entangled");

    assert!(!gridstate(&["build", "cross-hatch", "2", "3"]).status.success());
    assert!(!gridstate(&["build", "embed", &outer, &inner, "--at", "4,4"]).status.success());
}
