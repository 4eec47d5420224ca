use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn slarc(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slarc"));
    cmd.args(args).env_remove("SLARC_CACHE");
    if let Some(dir) = cache {
        cmd.env("SLARC_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn basis_count() {
    let out = slarc(&["--json", "basis", "--left", "2", "--right", "1"], None);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 3);
}

#[test]
fn mismatched_counts_multiply_to_zero() {
    let a = r#"{"left":2,"right":2,"larc_left":[],"larc_right":[]}"#;
    let b = r#"{"left":1,"right":1,"larc_left":[1],"larc_right":[1]}"#;
    let out = slarc(&["--json", "mul", a, b], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["terms"], Value::Array(vec![]));
}

#[test]
fn mul_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.json");
    fs::write(&p, r#"{"left":1,"right":1,"larc_left":[],"larc_right":[]}"#).unwrap();
    let p = p.to_str().unwrap();
    let minus = slarc(&["--json", "mul", p, p], None);
    assert_eq!(json_of(&minus)["terms"], Value::Array(vec![]));
    let plus = slarc(&["--json", "mul", "--flavor", "plus", p, p], None);
    assert_eq!(json_of(&plus)["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let bad_diagram = slarc(&["mul", r#"{"left":1,"right":1,"larc_left":[1],"larc_right":[]}"#, "{}"], None);
    assert_eq!(bad_diagram.status.code(), Some(2));
    assert_eq!(slarc(&["--field", "zz", "basis", "--left", "1", "--right", "1"], None).status.code(), Some(2));
    assert_eq!(slarc(&["verify", "nonsense"], None).status.code(), Some(2));
    assert_eq!(slarc(&["basis"], None).status.code(), Some(2));
    assert_eq!(slarc(&["verify", "basis", "--max-n", "3"], None).status.code(), Some(0));
}

#[test]
fn module_dims_json() {
    let out = slarc(&["--json", "--max-weight", "4", "module", "dims", "--kind", "standard", "--n", "2"], None);
    let v = json_of(&out);
    assert_eq!(v["weights"], serde_json::json!([0, 1, 2, 3, 4]));
    assert_eq!(v["dims"], serde_json::json!([0, 0, 1, 3, 6]));
}

#[test]
fn resolve_is_cached_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "--max-weight", "5", "resolve", "standard", "3", "--verify"];
    let first = slarc(&args, Some(dir.path()));
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("computed"));
    assert_eq!(json_of(&first)["verification"]["passed"], true);

    let second = slarc(&args, Some(dir.path()));
    assert!(String::from_utf8_lossy(&second.stderr).contains("from cache"));
    assert_eq!(first.stdout, second.stdout);

    for entry in fs::read_dir(dir.path()).unwrap() {
        fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let third = slarc(&args, Some(dir.path()));
    assert!(String::from_utf8_lossy(&third.stderr).contains("computed"));
    assert_eq!(first.stdout, third.stdout);

    let uncached = slarc(&[&["--no-cache"], &args[..]].concat(), Some(dir.path()));
    assert!(String::from_utf8_lossy(&uncached.stderr).contains("computed"));
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn json_is_deterministic() {
    let args = ["--json", "verify", "all", "--max-n", "2", "--max-weight", "4"];
    let a = slarc(&args, None);
    let b = slarc(&args, None);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ext_and_functor_reports() {
    let ext = slarc(&["--json", "ext", "standard", "3", "standard", "1"], None);
    let dims: Vec<u64> = json_of(&ext)["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["computed"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [3, 6, 3, 0]);
    let res = slarc(&["--max-weight", "5", "functor", "res", "--apply", "standard:3"], None);
    assert!(res.status.success());
    assert!(String::from_utf8_lossy(&res.stdout).contains("M_3 + M_2"));
}

#[test]
fn k0_commands() {
    let out = slarc(&["k0", "convert", "--to", "standard", "x^2"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(x-1)^2 + 2*(x-1) + 1");
    let out = slarc(&["k0", "inner", "x^2", "(x-1)^2"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
    assert_eq!(slarc(&["k0", "op", "--name", "fk", "x"], None).status.code(), Some(2));
}

#[test]
fn render_svg() {
    let out = slarc(&["render", "--svg", r#"{"left":2,"right":1,"larc_left":[2],"larc_right":[1]}"#], None);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("<svg") && s.contains("<circle"));
}
