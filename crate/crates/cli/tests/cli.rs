use std::path::Path;
use std::process::{Command, Output};

fn zonotile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonotile")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn purity_of_small_domains() {
    assert_eq!(stdout(&zonotile(&["purity", "--hypercube", "3"])), "pure, rank 7\n");
    assert_eq!(stdout(&zonotile(&["purity", "--hypercube", "4", "--relation", "strong"])), "pure, rank 11\n");
    assert_eq!(stdout(&zonotile(&["purity", "--hypersimplex", "4", "1", "3"])), "pure, rank 9\n");
}

#[test]
fn separation_verdicts() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["separation", "1,3", "2", "--n", "3"]))).unwrap();
    assert_eq!(v["weak"], false);
    assert_eq!(v["strong"], false);
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["separation", "1", "2,3", "--n", "3"]))).unwrap();
    assert_eq!(v["weak"], true);
    assert_eq!(v["strong"], true);
}

#[test]
fn interval_combi_renders_every_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    stdout(&zonotile(&["build-combi", "--intervals", "4", "--out", p(&k)]));
    let svg = stdout(&zonotile(&["render", "--combi", p(&k)]));
    assert_eq!(svg.matches("<circle").count(), 11);
    assert_eq!(svg.matches("<text").count(), 11);
    let bare = stdout(&zonotile(&["render", "--combi", p(&k), "--no-labels"]));
    assert_eq!(bare.matches("<text").count(), 0);
}

#[test]
fn contraction_then_expansion_and_a_broken_path() {
    let dir = tempfile::tempdir().unwrap();
    let (k, c) = (dir.path().join("k.json"), dir.path().join("c.json"));
    stdout(&zonotile(&["build-combi", "--intervals", "4", "--out", p(&k)]));
    stdout(&zonotile(&["contract", "--combi", p(&k), "--out", p(&c)]));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    let (small, path, bad) = (dir.path().join("s.json"), dir.path().join("p.json"), dir.path().join("b.json"));
    std::fs::write(&small, v["combi"].to_string()).unwrap();
    std::fs::write(&path, v["path"].to_string()).unwrap();
    let back = stdout(&zonotile(&["expand", "--combi", p(&small), "--path", p(&path)]));
    assert_eq!(back, std::fs::read_to_string(&k).unwrap());

    let mut reversed = v["path"].clone();
    reversed["vertices"].as_array_mut().unwrap().reverse();
    std::fs::write(&bad, reversed.to_string()).unwrap();
    let o = zonotile(&["expand", "--combi", p(&small), "--path", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "illegal_path");
    assert!(err["rule"].as_str().unwrap().starts_with('P'));
}

#[test]
fn descent_ends_at_the_interval_combi() {
    let dir = tempfile::tempdir().unwrap();
    let (k, up) = (dir.path().join("k.json"), dir.path().join("up.json"));
    stdout(&zonotile(&["build-combi", "--intervals", "4", "--out", p(&k)]));
    stdout(&zonotile(&["flip", "--combi", p(&k), "--op", "raise", "--base", "∅", "--ijk", "1,2,3", "--out", p(&up)]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["descend", "--combi", p(&up)]))).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    let start: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&k).unwrap()).unwrap();
    assert_eq!(v["final"], start);
}

#[test]
fn pattern_classification_and_domains() {
    let dir = tempfile::tempdir().unwrap();
    let pat = dir.path().join("p.json");
    std::fs::write(&pat, r#"{"n":3,"cycle":[[],[1],[1,2],[2]]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["pattern", "classify", "--pattern", p(&pat)]))).unwrap();
    assert_eq!(v["class"], "simple");
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["pattern", "verify", "--pattern", p(&pat)]))).unwrap();
    assert_eq!(v["holds"], true);

    std::fs::write(&pat, r#"{"n":4,"cycle":[[1],[3],[2],[4]]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&zonotile(&["pattern", "classify", "--pattern", p(&pat)]))).unwrap();
    assert_eq!(v["class"], "self_crossing");
}

#[test]
fn guards_exit_with_two() {
    let o = zonotile(&["enumerate", "--hypercube", "9", "--count"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "resource_guard");
    assert_eq!(zonotile(&["verify", "--paper-suite", "--max-n", "7"]).status.code(), Some(2));
}

#[test]
fn bad_input_is_reported_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"n":3,"members":[[1,3],[2]]}"#).unwrap();
    let o = zonotile(&["build-combi", "--family", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["message"].is_string());
}

#[test]
fn enumeration_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("all.json");
    stdout(&zonotile(&["enumerate", "--chamber", "3241", "--out", p(&out)]));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let first = dir.path().join("first.json");
    std::fs::write(&first, v["maximal_collections"][0].to_string()).unwrap();
    let d = stdout(&zonotile(&["enumerate", "--domain", p(&first), "--count"]));
    let d: serde_json::Value = serde_json::from_str(&d).unwrap();
    assert_eq!(d["pure"], true);
}

#[test]
fn suite_report_is_reproducible() {
    let args = ["verify", "--paper-suite", "--max-n", "4", "--seed", "7"];
    let a = stdout(&zonotile(&args));
    let b = stdout(&zonotile(&[&args[..], &["--jobs", "3"]].concat()));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 7);
}
