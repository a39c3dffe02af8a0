use std::process::{Command, Output};

use serde_json::Value;

fn npdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_npdr")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn classify_verdicts() {
    let o = npdr(&["classify", "--group", "Z1", "--n", "4"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["clause"], 3);
    assert!(v["verdict"].as_str().unwrap().contains("negative clause 3"));
    let o = npdr(&["classify", "--group", "Z2^3", "--n", "2"]);
    assert_eq!((code(&o), json(&o)["clause"].clone()), (1, Value::from(2)));
    let o = npdr(&["classify", "--group", "S3", "--n", "1"]);
    assert_eq!(json(&o)["clause"], 1);
    let o = npdr(&["classify", "--group", "Q8", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["admits"], true);
}

#[test]
fn build_q8_json() {
    let o = npdr(&["build", "--group", "Q8", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["digraph"]["vertex_count"], 24);
    assert_eq!(v["certificate"]["aut_order"], 8);
    assert_eq!(v["certificate"]["outcome"], "exists");
    assert_eq!(v["certificate"]["version"], 1);
    assert_eq!(v["certificate"]["seed"], 0);
}

#[test]
fn build_one_part() {
    let o = npdr(&["build", "--group", "Z2", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["digraph"]["vertex_count"], 2);
    assert_eq!(v["digraph"]["arcs"].as_array().unwrap().len(), 0);
    assert_eq!(v["certificate"]["aut_order"], 2);
}

#[test]
fn build_negative_emits_proof() {
    let o = npdr(&["build", "--group", "Z3", "--n", "2"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["certificate"]["outcome"], "not-exists");
    assert_eq!(v["certificate"]["nonexistence"]["candidates_enumerated"], 20);
}

#[test]
fn output_is_reproducible() {
    let args = ["build", "--group", "Z2^5", "--n", "3", "--seed", "3"];
    let a = npdr(&args);
    let b = npdr(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_npdr")).args(args).env("PDR_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(json(&a)["certificate"]["seed"], 3);
}

#[test]
fn emitted_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (group, n) in [("Z6", 3), ("Q8", 2), ("Z1", 7), ("Z2^3", 4)] {
        for format in ["json", "dot", "edges"] {
            let path = dir.path().join(format!("{group}-{n}.{format}"));
            let p = path.to_str().unwrap();
            let n = n.to_string();
            let o = npdr(&["build", "--group", group, "--n", &n, "--format", format, "--out", p]);
            assert_eq!(code(&o), 0, "{group} {format}");
            assert!(o.stdout.is_empty());
            if format != "json" {
                let cert = std::fs::read_to_string(format!("{p}.cert.json")).unwrap();
                assert!(cert.contains("\"outcome\":\"exists\""));
            }
            let o = npdr(&["verify", "--group", group, "--digraph", p]);
            assert_eq!(code(&o), 0, "{group} {format}: {}", String::from_utf8_lossy(&o.stderr));
            assert_eq!(json(&o)["outcome"], "exists");
        }
    }
}

#[test]
fn verify_rejects_wrong_group() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z6.json");
    let p = p.to_str().unwrap();
    assert_eq!(code(&npdr(&["build", "--group", "Z6", "--n", "3", "--out", p])), 0);
    let o = npdr(&["verify", "--group", "S3", "--digraph", p]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["outcome"], "rejected");
    assert_eq!(code(&npdr(&["verify", "--group", "Z4", "--digraph", p])), 2);
}

#[test]
fn searches() {
    let o = npdr(&["search", "drr", "--group", "Z7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["r"], serde_json::json!([1]));
    let o = npdr(&["search", "hdr", "--group", "Z4", "--r", "a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["l"], serde_json::json!([2]));
    let o = npdr(&["search", "trivial-npdr", "--n", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["digraph"]["vertex_count"], 7);
}

#[test]
fn nonexist_counts() {
    let o = npdr(&["nonexist", "--group", "Z1", "--n", "4"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["candidates_enumerated"], 4096);
    let o = npdr(&["nonexist", "--group", "Z2^2", "--n", "2"]);
    assert_eq!(json(&o)["candidates_enumerated"], 70);
    assert_eq!(code(&npdr(&["nonexist", "--group", "Z5", "--n", "3"])), 0);
}

#[test]
fn exit_codes_for_bad_input_and_budget() {
    assert_eq!(code(&npdr(&["build", "--group", "nope", "--n", "3"])), 2);
    assert_eq!(code(&npdr(&["build", "--group", "Z5", "--n", "3", "--format", "xml"])), 2);
    assert_eq!(code(&npdr(&["build", "--group", "Z5", "--n", "3", "--mode", "guess"])), 2);
    assert_eq!(code(&npdr(&["classify", "--group", "Z5"])), 2);
    assert_eq!(code(&npdr(&["verify", "--group", "Z5", "--digraph", "/nonexistent/file"])), 2);
    let o = npdr(&["search", "trivial-npdr", "--n", "9", "--budget", "1"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(code(&npdr(&["build", "--group", "Z2^5", "--n", "3", "--budget", "1"])), 3);
}
