use std::process::Command;

use serde_json::Value;

fn divext(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_divext")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(divext(&["verify", "fermat"]).0, 0);
    assert_eq!(divext(&["--params", "4,1,2,1", "classify"]).0, 2);
    assert_eq!(divext(&["--set", "no equals sign", "classify"]).0, 2);
    assert_eq!(divext(&["--params", "7,1,3,1", "ext", "--deg", "3"]).0, 3);
    assert_eq!(divext(&["--case", "function-field", "ext", "--deg", "5"]).0, 3);
    assert_eq!(divext(&["--set", "curves = 2,1,3; 2,1,4", "verify", "curves"]).0, 2);
    assert_eq!(divext(&["--set", "fermat = 2,1,3", "verify", "fermat"]).0, 2);
}

#[test]
fn ext_json_report() {
    let (code, out, _) = divext(&["--params", "3,1,2,1", "ext", "--deg", "1", "--pi", r#"{"a":2,"M":2}"#, "--pi2", r#"{"a":2,"M":2}"#]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "ext --deg 1");
    assert_eq!(v["items"][0]["summary"], "2 (= ef+1)");
}

#[test]
fn formats_and_out_file() {
    let dir = std::env::temp_dir().join(format!("divext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.md");
    let (code, out, _) = divext(&["--format", "md", "--out", path.to_str().unwrap(), "--params", "3,1,2,1", "table"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let md = std::fs::read_to_string(&path).unwrap();
    assert!(md.starts_with("## `table`"));
    let (_, csv, _) = divext(&["--format", "csv", "quaternion"]);
    assert!(csv.lines().nth(1) == Some("name,status,summary"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_hash_ignores_jobs() {
    let a = divext(&["--jobs", "1", "verify", "ext-table"]).1;
    let b = divext(&["--jobs", "3", "verify", "ext-table"]).1;
    assert_eq!(a, b);
    let c = divext(&["--seed", "1", "verify", "ext-table"]).1;
    assert_ne!(a, c);
}
