use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ordlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordlat"))
        .args(args)
        .env_remove("ORDLAT_SEED")
        .env_remove("ORDLAT_SAMPLES")
        .env_remove("ORDLAT_EXHAUSTIVE_LIMIT")
        .env_remove("ORDLAT_DM_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen_to(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file).display().to_string();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &path]);
    let o = ordlat(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn distributivity_on_n5_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = gen_to(dir.path(), "n5.json", &["n5"]);
    let o = ordlat(&["check", "--suite", "distributivity", "-i", &n5]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("FAIL"));
    assert!(text.contains("witness:"));

    let o = ordlat(&["check", "--suite", "distributivity", "-i", &n5, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["violation"], true);
    let props = v["suites"][0]["properties"].as_array().unwrap();
    let dist = props.iter().find(|p| p["id"] == "dist.distributive").unwrap();
    assert_eq!(dist["verdict"], "FAIL");
    for k in ["a", "b", "c"] {
        assert!(dist["witness"][k].is_u64());
    }
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"elements\": [").unwrap();
    let o = ordlat(&["check", "-i", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn unknown_suite_and_flag_are_input_errors() {
    assert_eq!(code(&ordlat(&["check", "--suite", "nope"])), 2);
    assert_eq!(code(&ordlat(&["check", "--frobnicate"])), 2);
    assert_eq!(code(&ordlat(&["gallery", "nope"])), 2);
}

#[test]
fn missing_input_file_exits_two() {
    let o = ordlat(&["check", "-i", "/nonexistent/lattice.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn non_lattice_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_to(dir.path(), "anti.json", &["random-poset", "--size", "3", "--edge-probability", "0"]);
    let o = ordlat(&["check", "--suite", "distributivity", "-i", &p]);
    assert_eq!(code(&o), 2);
}

#[test]
fn subset_that_is_not_a_sublattice_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = gen_to(dir.path(), "n5.json", &["n5"]);
    let o = ordlat(&["check", "--suite", "subobjects", "-i", &n5, "--subset", "a,c"]);
    assert_eq!(code(&o), 2);
    let o = ordlat(&["check", "--suite", "subobjects", "-i", &n5, "--subset", "0,a"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn dm_cap_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_to(dir.path(), "p.json", &["random-poset", "--size", "6"]);
    let o = ordlat(&["dm", "-i", &p, "--cap", "4"]);
    assert_eq!(code(&o), 3);
    let o = ordlat(&["dm", "-i", &p, "--max-cuts", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn json_round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = gen_to(dir.path(), "b3.json", &["boolean", "--atoms", "3"]);
    let first = ordlat(&["dm", "-i", &b3, "--strip", "--emit", dir.path().join("a.json").to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    let a = dir.path().join("a.json");
    let second = ordlat(&["dm", "-i", a.to_str().unwrap(), "--strip", "--emit", dir.path().join("b.json").to_str().unwrap()]);
    assert_eq!(code(&second), 0);
    let ja = fs::read_to_string(&a).unwrap();
    let jb = fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(ja, jb);
    let l = ordlat::io::load_lattice(&a).unwrap();
    assert_eq!(l.len(), 8);
}

#[test]
fn cover_and_leq_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let covers = dir.path().join("c.json");
    let leq = dir.path().join("l.json");
    let elements = r#"[{"id":0,"name":"x"},{"id":1,"name":"y"},{"id":2,"name":"z"}]"#;
    fs::write(&covers, format!(r#"{{"elements":{elements},"covers":[[0,1],[1,2]]}}"#)).unwrap();
    fs::write(&leq, format!(r#"{{"elements":{elements},"leq":[[0,1],[1,2],[0,2]]}}"#)).unwrap();
    let a = ordlat(&["dm", "-i", covers.to_str().unwrap(), "--format", "dot"]);
    let b = ordlat(&["dm", "-i", leq.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let l = gen_to(dir.path(), "l.json", &["downset-lattice", "--size", "5", "--seed", "4"]);
    let a = ordlat(&["dm", "-i", &l, "--format", "dot"]);
    let b = ordlat(&["dm", "-i", &l, "--format", "dot"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let g1 = ordlat(&["gen", "grid", "--rows", "2", "--cols", "3", "--format", "dot"]);
    let g2 = ordlat(&["gen", "grid", "--rows", "2", "--cols", "3", "--format", "dot"]);
    assert_eq!(g1.stdout, g2.stdout);
}

#[test]
fn dm_of_two_antichain_has_four_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("anti.json");
    fs::write(&p, r#"{"elements":[{"id":0,"name":"a"},{"id":1,"name":"b"}]}"#).unwrap();
    let dot = dir.path().join("dm.dot");
    let o = ordlat(&["dm", "-i", p.to_str().unwrap(), "--emit", dot.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&dot).unwrap();
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    assert_eq!(nodes, 4, "{text}");
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["adjoined"].as_array().unwrap().len(), 2);
    assert_eq!(v["violation"], false);
}

#[test]
fn gallery_all_exits_zero() {
    let o = ordlat(&["gallery", "all", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        for c in r["claims"].as_array().unwrap() {
            assert_eq!(c["verdict"], "PASS", "{c}");
        }
    }
}

#[test]
fn conv_reports_limits_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let c = gen_to(dir.path(), "c.json", &["chain", "--size", "4"]);
    let o = ordlat(&["conv", "-i", &c, "--seq", r#"{"prefix":[0,3],"cycle":[2]}"#, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["o_limit"], v["uo_limit"]);
    assert_eq!(v["oracle_agrees"], true);
    assert!(v["o_limit"].is_string());
}

#[test]
fn check_json_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let l = gen_to(dir.path(), "l.json", &["random-lattice", "--size", "5", "--seed", "11"]);
    let run = || {
        let o = ordlat(&["check", "-i", &l, "--format", "json", "--samples", "300"]);
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn env_overrides_sample_count() {
    let dir = tempfile::tempdir().unwrap();
    let l = gen_to(dir.path(), "b.json", &["boolean", "--atoms", "4"]);
    let o = Command::new(env!("CARGO_BIN_EXE_ordlat"))
        .args(["check", "--suite", "distributivity", "-i", &l, "--format", "json", "--mode", "sampled"])
        .env("ORDLAT_SAMPLES", "77")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["samples"], 77);
}
