use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffdyn"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).env_remove("FFDYN_BUDGET").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn genus_report() {
    let (code, text) = run(&["--p", "3", "curve", "genus", "--ell", "2", "--F", "x^5+t*x+1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["genus"], 2);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["p"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--p", "3", "orbit", "--map", "z^^2", "--alpha", "0"]).0, 2);
    assert_eq!(run(&["--p", "4", "orbit", "--map", "z^2", "--alpha", "0"]).0, 2);
    assert_eq!(run(&["orbit", "--map", "z^2", "--alpha", "0"]).0, 2);
    assert_eq!(run(&["--p", "3", "--budget", "3", "witness", "--map", "z^2+t", "--beta", "0"]).0, 3);
    let (code, text) = run(&["--p", "3", "curve", "genus", "--ell", "3", "--F", "x^5+t*x+1"]);
    assert_eq!(code, 4);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["error"]["kind"], "hypothesis");
    assert_eq!(run(&["--p", "3", "arboreal", "zram", "--map", "z^2+t+z", "--beta", "0"]).0, 4);
}

#[test]
fn budget_from_environment() {
    let out = bin()
        .args(["--p", "3", "witness", "--map", "z^2+t", "--beta", "0"])
        .env("FFDYN_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_and_file_output() {
    let dir = std::env::temp_dir().join(format!("ffdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("scan.json");
    let csv = dir.join("scan.csv");
    let (code, stdout) = run(&[
        "--p", "3", "--out", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
        "integral-scan", "--map", "z^2", "--alpha", "t", "--beta", "inf", "--N", "4",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("n,height,integral,witness"));
    assert_eq!(lines.next(), Some("0,1,true,"));
    assert_eq!(table.lines().count(), 6);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_have_no_floats() {
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert!(!has_float(&v), "{path:?}");
        }
    }
}

fn has_float(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_f64(),
        serde_json::Value::Array(a) => a.iter().any(has_float),
        serde_json::Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["orbit", "--map", "z^2+t", "--alpha", "0", "--n", "3"],
        &["heights", "--map", "z^2+t", "--z", "0,inf"],
        &["reduction", "--map", "z^2+t", "--place", "t+1"],
        &["witness", "--map", "z^2+t", "--beta", "0", "--at", "2"],
        &["integral-scan", "--map", "z^2+t", "--alpha", "0", "--beta", "0", "--N", "3"],
        &["zsigmondy", "--map", "z^2+t", "--alpha", "0", "--beta", "0", "--ell", "2", "--N", "4"],
        &["curve", "genus", "--ell", "2", "--F", "x^3+t*x+1"],
        &["curve", "verdict", "--ell", "2", "--F", "x^2+t", "--map", "z^2+t", "--beta", "0", "--n", "1"],
        &["curve", "ramified-sum", "--ell", "2", "--F", "x^2-t", "--a", "t"],
        &["arboreal", "zram", "--map", "z^2+t", "--beta", "0", "--N", "2"],
        &["arboreal", "tower", "--map", "z^2+t", "--beta", "0", "--N", "2"],
        &["arboreal", "finindex", "--map", "z^2+t", "--gamma", "0", "--n", "2"],
        &["period-census", "--map", "z^2+t", "--alpha", "0", "--max-deg", "2"],
    ];
    for args in cases {
        let mut full = vec!["--p", "3"];
        full.extend_from_slice(args);
        let (code, text) = run(&full);
        assert_eq!(code, 0, "{args:?}: {text}");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("error").is_none());
    }
}
