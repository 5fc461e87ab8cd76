use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn evolving(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evolving"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("evolving-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_a5_from_file() {
    let path = spec_file("a5.txt", "# A5\n(0 1 2 3 4)\n(0 1 2)\n");
    let out = evolving(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["order"], 60);
    assert_eq!(r["evolving"], false);
    assert_eq!(r["witness"]["p"], 2);
    assert_eq!(r["witness"]["subgroup"]["order"], 1);
    assert!(r["graph"].is_null());
    assert!(r.get("decomposition").is_none());
}

#[test]
fn analyze_c6_text_and_json() {
    let path = spec_file("c6.txt", "(0 1 2 3 4 5)\n");
    let out = evolving(&["analyze", path.to_str().unwrap(), "--json"]);
    let r = json(&out);
    assert_eq!(r["evolving"], true);
    assert_eq!(r["graph"]["edges"].as_array().unwrap().len(), 0);
    let text = evolving(&["analyze", path.to_str().unwrap()]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("evolving: yes"));
    assert!(text.contains("graph: edges []"));
}

#[test]
fn analyze_example_g() {
    let out = evolving(&["analyze", "catalog:paper_G_3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["evolving"], true);
    assert_eq!(r["prime_intense"], true);
    assert_eq!(r["decomposition"]["target"]["order"], 27);
    assert_eq!(r["decomposition"]["source"]["order"], 2);
    assert_eq!(r["decomposition"]["isolated"]["order"], 1);
    assert_eq!(r["graph"]["edges"], serde_json::json!([[2, 3]]));
    assert_eq!(r["sylow_family"]["3"].as_array().unwrap().len(), 27);
}

#[test]
fn analyze_is_deterministic() {
    let a = evolving(&["analyze", "catalog:S3xC4", "--json"]);
    let b = evolving(&["analyze", "catalog:S3xC4", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let bad = spec_file("bad.txt", "(0 1 2)\n(0 1\n");
    let out = evolving(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = evolving(&["analyze", "catalog:A5", "--subgroup-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = evolving(&["analyze", "catalog:A5", "--closure-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));

    let out = evolving(&["analyze", "catalog:missing"]);
    assert_eq!(out.status.code(), Some(1));

    let out = evolving(&["analyze", "/nonexistent/group.txt"]);
    assert_eq!(out.status.code(), Some(1));

    let out = evolving(&["verify", "E"]);
    assert_eq!(out.status.code(), Some(1));

    let out = evolving(&["verify", "B", "--max-order", "1000"]);
    assert_eq!(out.status.code(), Some(2));

    let out = evolving(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_runs_are_green_and_independent_of_jobs() {
    for check in ["A", "B", "C", "D", "lemma22", "prop61"] {
        let one = evolving(&["verify", check, "--max-order", "60", "--jobs", "1"]);
        let many = evolving(&["verify", check, "--max-order", "60", "--jobs", "3"]);
        assert_eq!(one.status.code(), Some(0), "{check}");
        assert_eq!(one.stdout, many.stdout, "{check}");
        let text = String::from_utf8(one.stdout).unwrap();
        assert!(text.contains(" 0 failed"), "{check}");
    }
}

#[test]
fn verify_gamma() {
    let out = evolving(&["verify", "gamma", "--max-order", "24", "--jobs", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["check"], "gamma");
    assert!(r["outcomes"].as_array().unwrap().iter().all(|o| o["passed"] == true));
}

#[test]
fn catalog_listing() {
    let out = evolving(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = |name: &str| text.lines().find(|l| l.split_whitespace().next() == Some(name)).unwrap().to_string();
    assert!(line("A5").contains("evolving=false"));
    assert!(line("paper_G_3").contains("evolving=true"));
    assert!(line("paper_W_3").contains("evolving=false"));
    let manifest: Value = serde_json::from_slice(&evolving(&["catalog", "list", "--json"]).stdout).unwrap();
    assert!(manifest.as_array().unwrap().len() >= 25);
}
