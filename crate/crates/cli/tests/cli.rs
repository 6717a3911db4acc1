use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzero")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_zero_on_longest_word_passes() {
    let o = qzero(&["check-zero", "--word", "s1s2s1", "--lambda", "1,0", "--mu", "0,1", "--dim", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["pass"], true);
    let rels = v["relations"].as_array().unwrap();
    assert!(rels.iter().any(|r| r["id"] == "comm-z7a"));
    assert!(rels.iter().all(|r| r["residual"].as_f64().unwrap() < 1e-12));
}

#[test]
fn lemma_table_meets_bound() {
    let o = qzero(&["lemma-perm", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["min_sum"].as_u64() >= r["bound"].as_u64()));
}

#[test]
fn antipode_demo_prints_one() {
    let o = qzero(&["demo-antipode"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["obstruction"].as_f64(), Some(1.0));
}

#[test]
fn exit_code_corpus() {
    let cases: &[(&[&str], i32)] = &[
        (&["check-q", "--n", "2", "--word", "s1s2", "--q", "0.3", "--dim", "5", "--margin", "2"], 0),
        (&["qdet", "--n", "2", "--word", "s2s1", "--q", "0.5", "--dim", "5", "--margin", "3"], 0),
        (&["crystallise", "--n", "2", "--word", "s1", "--dim", "6", "--q-grid", "0.1,0.01"], 0),
        (&["bialgebra", "--dim", "5", "--margin", "3", "--tol", "1e-12"], 0),
        (&["demo-toeplitz-gap", "--expr", "1", "--expr", "z[1,1]*z[1,1]'"], 0),
        (&["eval", "--expr", "z[1,1]*z[1,1]'", "--expect", "1", "--word", "s1", "--margin", "1"], 0),
        (&["eval", "--expr", "z[1,1]*z[1,1]'", "--expect", "1", "--word", "s1", "--margin", "0"], 1),
        (&["eval", "--expr", "z[1,1]'*z[1,1]", "--expect", "1", "--word", "s1"], 1),
        (&["eval", "--expr", "z[1,1]", "--expect", "z[1,1]"], 0),
        (&["check-zero", "--word", "s3"], 2),
        (&["check-zero", "--word", "s1", "--lambda", "1,0", "--dim", "1"], 2),
        (&["check-q", "--q", "1.5"], 2),
        (&["eval", "--expr", "z[1,"], 2),
        (&["no-such-command"], 2),
        (&["classify", "--tol", "-1"], 2),
    ];
    for (args, want) in cases {
        let o = qzero(args);
        assert_eq!(code(&o), *want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn errors_are_json_on_stderr() {
    let o = qzero(&["eval", "--expr", "z[1,"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "syntax");
    let o = qzero(&["check-zero", "--bogus"]);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "usage");
}

#[test]
fn broken_input_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    let o = qzero(&["canonical", "--word", "s1", "--dim", "5", "--out", path(&file)]);
    assert_eq!(code(&o), 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["gens"]["1,1"]["entries"][0][1] = serde_json::json!([0.5, 0.0]);
    std::fs::write(&file, v.to_string()).unwrap();
    let o = qzero(&["check-zero", "--input", path(&file), "--margin", "3"]);
    assert_eq!(code(&o), 1);
    let o = qzero(&["classify", "--input", path(&file), "--margin", "3"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "not-a-representation");
}

#[test]
fn canonical_file_classifies_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    let args = ["canonical", "--word", "s1s2s1", "--lambda", "deg:40", "--mu", "deg:-100", "--dim", "4"];
    let o = qzero(&[&args[..], &["--scramble", "--seed", "11", "--margin", "2", "--out", path(&file)]].concat());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["word"], "s1s2s1");
    let o = qzero(&["classify", "--input", path(&file), "--margin", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["case"], 6);
    let lam = &r["canonical_params"][0];
    let want = 40f64.to_radians();
    assert!((lam[0].as_f64().unwrap() - want.cos()).abs() < 1e-8);
    assert!((lam[1].as_f64().unwrap() - want.sin()).abs() < 1e-8);
    let o = qzero(&["intertwine", "--input", path(&file), "--margin", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn same_config_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"dim": 4, "margin": 2, "seed": 5, "tol": 1e-6}"#).unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("c{k}.json"));
        let o = qzero(&["classify", "--word", "s2s1", "--lambda", "deg:15", "--scramble", "--config", path(&cfg), "--out", path(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let other = dir.path().join("c2.json");
    let o = qzero(&["canonical", "--word", "s2s1", "--scramble", "--config", path(&cfg), "--seed", "6", "--out", path(&other)]);
    assert_eq!(code(&o), 0);
    let again = dir.path().join("c3.json");
    qzero(&["canonical", "--word", "s2s1", "--scramble", "--config", path(&cfg), "--out", path(&again)]);
    assert_ne!(std::fs::read(&other).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"dim": 3, "format": "csv"}"#).unwrap();
    let o = qzero(&["demo-antipode", "--config", path(&cfg)]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("dim,obstruction"));
    let o = qzero(&["demo-antipode", "--config", path(&cfg), "--format", "json", "--dim", "9"]);
    assert_eq!(stdout_json(&o)["dim"], 9);
    std::fs::write(&cfg, r#"{"dimension": 3}"#).unwrap();
    assert_eq!(code(&qzero(&["demo-antipode", "--config", path(&cfg)])), 2);
}

#[test]
fn csv_relation_table() {
    let o = qzero(&["check-zero", "--word", "s1", "--dim", "5", "--margin", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,indices,residual"));
    assert!(lines.any(|l| l.starts_with("comm-z7a,")));
    assert_eq!(code(&qzero(&["canonical", "--format", "csv"])), 2);
}

#[test]
fn q_sweep_over_all_words() {
    let o = qzero(&["check-q", "--n", "2", "--all-words", "--q", "0.2,0.7", "--dim", "4", "--margin", "2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2 * 7);
    assert_eq!(v["pass"], true);
}

#[test]
fn phase_modulus_warning() {
    let o = qzero(&["eval", "--expr", "z[1,1]", "--lambda", "2,0", "--word", "e"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["warning"].as_str().unwrap().contains("normalized"));
}
