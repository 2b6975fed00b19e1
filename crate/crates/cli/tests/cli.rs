use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qset")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = qset(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    qset(args).status.code().unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table_matches_golden_file() {
    let golden = include_str!("../../core/tests/data/table1.txt");
    assert_eq!(stdout(&["table", "--max-serial", "24"]), golden.trim_end());
}

#[test]
fn serial_commands() {
    assert_eq!(stdout(&["unserial", "6"]), "{{{1}},{1}}");
    assert_eq!(stdout(&["serial", "{{{1}},{1}}"]), "6");
    assert_eq!(stdout(&["hexp", "4"]), "65536");
    assert_eq!(stdout(&["tier", "3"]), "[4, 16)");
    assert_eq!(stdout(&["rank", "e16"]), "4");
    assert_eq!(stdout(&["serial", "--format", "json", "e24"]), r#"{"serial":"24"}"#);
}

#[test]
fn algebra_commands() {
    assert_eq!(stdout(&["normalize", "{1} ^ {1}"]), "0");
    assert_eq!(stdout(&["normalize", "1/2*e1 + e2"]), "{{1}} + 1/2*{1}");
    assert_eq!(stdout(&["wedge", "e2", "e1"]), "{{1},1}");
    assert_eq!(stdout(&["iota", "e1"]), "{{1}}");
    assert_eq!(stdout(&["grade", "e3"]), "2*{{1},1}");
    assert_eq!(stdout(&["grade", "--project", "1", "e3 + e2"]), "{{1}}");
    assert_eq!(
        stdout(&["normalize", "--format", "json", "e3"]),
        r#"{"terms":[{"coef":"1/1","monomial":["1","0"]}]}"#
    );
}

#[test]
fn clifford_commands() {
    assert_eq!(stdout(&["pair", "--dim", "2", "1", "4"]), "v1*v4");
    assert_eq!(stdout(&["pair", "--dim", "2", "1", "1"]), "0");
    assert_eq!(stdout(&["beta", "--dim", "1", "1", "{1}"]), "1/1");
    assert_eq!(stdout(&["beta", "--convention", "literal", "--dim", "1", "1", "{1}"]), "0/1");
}

#[test]
fn quantify_and_lift() {
    let m = temp_file("number.json", r#"{"basis":["0","1"],"rows":[["1","0"],["0","1"]]}"#);
    let text = stdout(&["quantify", "--matrix", m.to_str().unwrap()]);
    assert_eq!(text, "{1}\t{1}\t1\n{{1}}\t{{1}}\t1\n{{1},1}\t{{1},1}\t2");
    let lifted = stdout(&["lift", "--matrix", m.to_str().unwrap(), "--to", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&lifted).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 16);
    let occ = stdout(&["occupation", "--dim", "2", "{1}"]);
    assert_eq!(occ, "{{1}}\t{{1}}\t1\n{{1},1}\t{{1},1}\t1");
}

#[test]
fn palev_commands() {
    assert_eq!(stdout(&["palev-closure", "--dim", "1"]), "");
    let json = stdout(&["palev-closure", "--dim", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    assert_eq!(
        stdout(&["contract", "--j", "4,8", "--k", "2"]),
        "j,k,residual\n4,2,0.5\n8,2,0.25"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["normalize", "{1"]), 2);
    assert_eq!(code(&["--rank-guard", "2", "normalize", "e4"]), 3);
    assert_eq!(code(&["palev-closure", "--dim", "5"]), 3);
    assert_eq!(code(&["contract", "--j", "6000", "--k", "1"]), 3);
    assert_eq!(code(&["quantify", "--matrix", "/nonexistent.json"]), 1);
    assert_eq!(code(&["occupation", "--dim", "2", "{{{1}}}"]), 1);
}
