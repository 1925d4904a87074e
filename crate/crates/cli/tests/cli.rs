use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polar-lines"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("POLAR_LINES_CACHE_DIR").output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn scheme_tables_multiplicities() {
    let v = ok_json(&["scheme", "tables", "--q", "2", "--e", "0"]);
    assert_eq!(strings(&v["multiplicities"]), ["1", "14", "20", "14", "56"]);
    assert_eq!(v["n"], "105");
    let o = run(&["scheme", "tables", "--q", "2", "--e", "0", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l == "00,1,12,12,48,32"));
}

#[test]
fn lp_bound_spot_value() {
    let v = ok_json(&["lp", "bound", "--q", "2", "--e", "0", "--forbid", "R11,R21"]);
    assert_eq!(v["optimum"], "7/1");
}

#[test]
fn construct_then_eval_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("hex.json");
    let f = f.to_str().unwrap();
    let o = run(&["construct", "hexagon", "--space", "sp6_q2", "--out", f]);
    assert!(o.status.success());
    let v = ok_json(&["set", "eval", "--space", "sp6_q2", "--file", f, "--example", "hexagon"]);
    assert_eq!(strings(&v["inner_distribution"]), ["1/1", "6/1", "0/1", "24/1", "32/1"]);
    assert_eq!(v["regular"]["eigenspace"], "V20");
    assert_eq!(v["example"]["passed"], true);
}

#[test]
fn plane_by_bases_matches_plane_by_indices() {
    let a = ok_json(&["construct", "plane", "--space", "o6plus_q2", "--index", "4"]);
    let b = ok_json(&["construct", "plane", "--space", "o6plus_q2", "--index", "4", "--bases"]);
    assert!(b.get("lines").is_none());
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("plane.json");
    std::fs::write(&f, serde_json::to_string(&b).unwrap()).unwrap();
    let v = ok_json(&["set", "eval", "--space", "o6plus_q2", "--file", f.to_str().unwrap()]);
    assert_eq!(v["size"], 7);
    assert_eq!(a["lines"].as_array().unwrap().len(), 7);
    assert_eq!(strings(&v["support"]), ["10", "20"]);
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("set.json");
    std::fs::write(&f, r#"{"version":1,"space":{"family":"o7","p":3,"h":1},"lines":[0,1,2]}"#).unwrap();
    let o = run(&["set", "eval", "--space", "o6plus_q2", "--file", f.to_str().unwrap()]);
    assert!(!o.status.success());
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "fingerprint_mismatch");
    std::fs::write(&f, "{not json").unwrap();
    let o = run(&["set", "eval", "--space", "o6plus_q2", "--file", f.to_str().unwrap()]);
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "json");
    let o = run(&["lp", "bound", "--q", "6", "--e", "0", "--forbid", "R11"]);
    assert!(!o.status.success());
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "illegal_parameters");
}

#[test]
fn search_streams_results_and_summary() {
    let lines = json_lines(&["search", "regular", "--space", "o6plus_q2", "--j", "11", "--size", "15"]);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["complete"], true);
    assert_eq!(summary["count"], 28);
    assert_eq!(lines.len(), 29);
    let lines = json_lines(&["search", "packing", "--space", "o6plus_q2"]);
    assert_eq!(lines.last().unwrap()["summary"]["size"], 7);
    let lines = json_lines(&["search", "spread", "--space", "sp6_q2", "--section", "quadrangle"]);
    assert_eq!(lines[0]["set"]["size"], 9);
    let lines = json_lines(&["search", "probe", "--space", "o6plus_q2", "--support", "10", "--size", "21"]);
    assert_eq!(lines.last().unwrap()["summary"]["verdict"], "none");
}

#[test]
fn outputs_are_deterministic() {
    let args = ["scheme", "verify", "--space", "o6plus_q2", "--seed", "7", "--threads", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["search", "regular", "--space", "o6plus_q2", "--j", "11", "--size", "15"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn space_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let v = ok_json(&["--cache-dir", d, "space", "build", "--space", "o6plus_q2"]);
    assert_eq!(v["header"]["lines"], 105);
    assert!(Path::new(v["path"].as_str().unwrap()).exists());
    let info = ok_json(&["--cache-dir", d, "space", "info", "--space", "o6plus_q2"]);
    assert_eq!(info["n"], 105);
    assert_eq!(strings(&info["valencies"]), ["1", "12", "12", "48", "32"]);
    let o = run(&["space", "build", "--space", "o6plus_q2"]);
    assert!(!o.status.success());
}
