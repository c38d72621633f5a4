use std::process::{Command, Output};

use hypbill::tiling::GraphDocument;
use serde_json::Value;

fn hypbill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypbill"))
        .args(args)
        .env_remove("HYPBILL_FORMAT")
        .env_remove("HYPBILL_DEPTH")
        .env_remove("HYPBILL_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hypbill(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let doc: Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(doc["schema"], 1);
    doc
}

fn code(args: &[&str]) -> i32 {
    hypbill(args).status.code().unwrap()
}

#[test]
fn table_one_as_csv() {
    let csv = stdout(&["tables", "--which", "1"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,q,Billiard Language Complexity");
    assert_eq!(lines.len(), 16);
    assert!(lines.contains(&"4,6,2.61803398874989"));
    assert!(lines.contains(&"8,8,6.97983577921557"));
}

#[test]
fn table_three_as_csv_and_json() {
    let csv = stdout(&["tables", "--which", "3"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,q,ell,alpha^((q-1)/(q+1)),alpha,u");
    assert_eq!(lines.len(), 15);
    assert_eq!(
        lines[1],
        "3,7,1.00000000000000,1.39320015609277,1.55603019132268,1.83928675521416"
    );
    let doc = json(&["tables", "--which", "3"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    let r73 = rows.iter().find(|r| r["p"] == 7 && r["q"] == 3).unwrap();
    assert_eq!(r73["lower_language_rate"].as_f64(), Some(0.0));
    assert_eq!(r73["ell"].as_f64(), Some(1.0));
}

#[test]
fn threshold_word_is_reported_with_its_violation() {
    let doc = json(&["word", "check", "--p", "4", "--q", "8", "--word", "12121"]);
    assert_eq!(doc["admissible"], false);
    assert_eq!(doc["violation"]["rule"], "E2");
    assert_eq!(doc["violation"]["position"], 1);
    assert_eq!(doc["violation"]["length"], 5);
    let ok = json(&["word", "check", "--p", "4", "--q", "8", "--word", "1212"]);
    assert_eq!(ok["admissible"], true);
    assert!(ok["violation"].is_null());
}

#[test]
fn zero_based_words_and_letter_orders() {
    let doc = json(&[
        "word", "check", "--p", "3", "--q", "7", "--word", "0101", "--zero-based",
    ]);
    assert_eq!(doc["word"], "1212");
    assert_eq!(doc["rules"], "o-upper");
    let class = json(&[
        "word", "class", "--p", "4", "--q", "8", "--word", "12123131", "--order", "1243",
    ]);
    assert_eq!(class["admissible"], false);
    assert_eq!(class["witness"]["member"], "12121313");
}

#[test]
fn class_counts_and_paths() {
    let doc = json(&["word", "classes", "--p", "4", "--q", "6", "--length", "3"]);
    let growth = json(&["growth", "--p", "4", "--q", "6", "--terms", "3"]);
    assert_eq!(doc["count"], growth["coefficients"][3]);

    let d = json(&["path", "dist", "--p", "4", "--q", "6", "--from", "0", "--to", "40"]);
    let path = d["path"].as_array().unwrap();
    assert_eq!(path.len() as u64, d["distance"].as_u64().unwrap() + 1);

    let m = json(&["path", "minimal", "--p", "4", "--q", "8", "--word", "12121414"]);
    assert_eq!(m["minimal"], false);
    assert_eq!(m["witness"]["kind"], "doubled-class");
}

#[test]
fn growth_csv_lists_coefficients() {
    let csv = stdout(&["growth", "--p", "4", "--q", "6", "--terms", "4", "--csv"]);
    assert_eq!(csv, "n,tiles\n0,1\n1,4\n2,12\n3,32\n4,84\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["alpha", "--p", "4", "--q", "4"]), 2);
    assert_eq!(code(&["alpha", "--p", "4"]), 2);
    assert_eq!(code(&["tables", "--which", "2"]), 2);
    assert_eq!(code(&["lang-rate", "--p", "4", "--q", "6", "--rule", "o-upper"]), 2);
    assert_eq!(code(&["word", "check", "--p", "4", "--q", "8", "--word", "1212", "--csv"]), 2);
    assert_eq!(
        code(&["word", "classes", "--p", "4", "--q", "8", "--length", "6", "--budget", "10"]),
        3
    );
    assert_eq!(code(&["alpha", "--p", "4", "--q", "6"]), 0);
}

#[test]
fn environment_overrides_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypbill"))
        .args(["alpha", "--p", "5", "--q", "4"])
        .env("HYPBILL_FORMAT", "json")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["alpha"].as_f64(), Some(2.61803398874989));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("hypbill-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut svgs = Vec::new();
    let mut graphs = Vec::new();
    for i in 0..2 {
        let svg = dir.join(format!("d{i}.svg"));
        let graph = dir.join(format!("g{i}.json"));
        let doc = json(&[
            "draw",
            "--p",
            "4",
            "--q",
            "8",
            "--word",
            "1212",
            "--svg",
            svg.to_str().unwrap(),
            "--save-graph",
            graph.to_str().unwrap(),
        ]);
        assert_eq!(doc["trace"]["status"], "witness");
        svgs.push(std::fs::read(&svg).unwrap());
        graphs.push(std::fs::read_to_string(&graph).unwrap());
    }
    assert_eq!(svgs[0], svgs[1]);
    assert_eq!(graphs[0], graphs[1]);
    assert!(String::from_utf8_lossy(&svgs[0]).starts_with("<svg"));
    let g = GraphDocument::from_json(&graphs[0]).unwrap();
    assert_eq!(g.graph.params.p, 4);
    assert_eq!(stdout(&["tables", "--which", "3", "--json"]), stdout(&["tables", "--which", "3", "--json"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_reports_diagonals() {
    let doc = json(&["census", "--p", "4", "--q", "6", "--kmax", "4", "--p1", "4", "--p2", "12"]);
    let gd: Vec<u64> = doc["gd"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(gd, [4, 2, 12, 20, 60]);
    assert_eq!(doc["complexity"].as_array().unwrap().len(), 4);
}
