use std::path::PathBuf;
use std::process::{Command, Output};

fn longknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longknot")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("longknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn list_builtin_and_custom() {
    let out = longknot(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["knots"].as_array().unwrap().iter().map(|k| k["name"].as_str().unwrap()).collect();
    for k in ["3_1", "4_1", "6_2", "8_10", "8_18", "8_20", "9_24", "10_99", "10_123", "10_137", "11a_5"] {
        assert!(names.contains(&k), "{k}");
    }
    let empty = scratch("empty.json", r#"{"version": 1, "knots": []}"#);
    let v = json(&longknot(&["list", "--catalog", empty.to_str().unwrap()]));
    assert!(v["knots"].as_array().unwrap().is_empty());
    let bad = scratch("bad.json", "{ not json");
    let out = longknot(&["list", "--catalog", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
}

#[test]
fn rack_counts() {
    let v = json(&longknot(&["rack", "--knot", "unknot", "--group", "S3", "--mu", "(1 2)", "--lambda", "e"]));
    assert_eq!(v["total"], 1);
    assert_eq!(v["cross_check_total"], 1);
    let span = json(&longknot(&["rack", "--knot", "3_1", "--group", "S3", "--mu", "(1 2)"]));
    assert_eq!(span["total"], span["cross_check_total"]);
    let rel = json(&longknot(&["rack", "--knot", "3_1", "--backend", "rel"]));
    assert_eq!(rel["agree"], true);
    for (r, s) in rel["counts"].as_array().unwrap().iter().zip(span["counts"].as_array().unwrap()) {
        assert_eq!(r["count"].as_u64().unwrap(), u64::from(s["count"].as_u64().unwrap() > 0));
    }
    assert_eq!(longknot(&["rack", "--knot", "3_1", "--group", "Q7"]).status.code(), Some(1));
    assert_eq!(longknot(&["rack", "--knot", "99_9"]).status.code(), Some(1));
}

#[test]
fn heisenberg_and_caps() {
    let v = json(&longknot(&["heisenberg", "--knot", "3_1"]));
    assert_eq!(v["generators"], serde_json::json!(["(1 - t + t^2)*s"]));
    assert_eq!(v["principal"], true);
    assert_eq!(v["matches_alexander_times_s"], true);
    let v = json(&longknot(&["heisenberg", "--knot", "unknot"]));
    assert_eq!(v["generators"], serde_json::json!(["s"]));
    assert!(v["table1_match"].is_null());
    let out = longknot(&["heisenberg", "--knot", "11a_5", "--groebner-step-cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn table1_core() {
    let out = longknot(&["table1", "--profile", "core", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains("NO"));
}

#[test]
fn universal_and_usage() {
    let v = json(&longknot(&["universal", "--knot", "unknot", "--trunc", "4", "--rank", "4"]));
    assert_eq!(v["equal"], true);
    assert_eq!(v["N"], 4);
    let v = json(&longknot(&["universal", "--knot", "3_1", "--trunc", "3", "--offset", "1/2"]));
    assert_eq!(v["computed_scalar"], "1 - ε^2 + O(ε^3)");
    assert_eq!(longknot(&["universal", "--knot", "3_1", "--offset", "x"]).status.code(), Some(1));
    assert_eq!(longknot(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(longknot(&["rack"]).status.code(), Some(1));
    assert_eq!(longknot(&["--help"]).status.code(), Some(0));
}

#[test]
fn diagram_files_are_accepted() {
    let text = longknot(&["list", "--table"]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("knot"));
    let w = longknot::MorseWord::from_braid(&[1, 1, 1], 2).unwrap();
    let p = scratch("trefoil.knot", &w.to_text());
    let v = json(&longknot(&["heisenberg", "--knot", p.to_str().unwrap()]));
    assert_eq!(v["generators"], serde_json::json!(["(1 - t + t^2)*s"]));
}
