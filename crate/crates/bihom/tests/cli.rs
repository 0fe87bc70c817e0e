use std::path::Path;
use std::process::Command;

use bihom::cli;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bihom").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn tangent_binary_forms_have_rank_d() {
    let dir = tempfile::tempdir().unwrap();
    for d in 2..=10usize {
        let coeffs: Vec<String> = (0..=d).map(|i| if i == 1 { "1".into() } else { "0".into() }).collect();
        let q = serde_json::json!({ "d": d, "coeffs": coeffs }).to_string();
        let path = write(dir.path(), "q.json", &q);
        let (code, out, err) = run(&["sylvester", "analyze", "--in", &path]);
        assert_eq!(code, 0, "{err}");
        let v = json(&out);
        assert_eq!((v["border_rank"].as_u64(), v["rank"].as_u64()), (Some(2), Some(d as u64)));
        assert_eq!(v["witness"].as_array().unwrap().len(), d);
    }
}

#[test]
fn irrational_points_fall_back_to_numeric() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "q.json", r#"{"d":3,"coeffs":["2","0","12","0"]}"#);
    let (code, out, _) = run(&["sylvester", "analyze", "--in", &path]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["backend"], "numeric");
    assert_eq!(v["fallback_from_exact"], true);
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    let (code, out, _) = run(&["--backend", "numeric", "sylvester", "analyze", "--in", &path]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["fallback_from_exact"], false);
}

#[test]
fn malformed_json_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\"d\": 3,\n  \"coeffs\": [1, 2,, 3]}");
    let (code, out, err) = run(&["sylvester", "analyze", "--in", &path]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad.json:2:"), "{err}");
    let path = write(dir.path(), "short.json", r#"{"d": 3, "coeffs": [1, 2]}"#);
    let (code, _, err) = run(&["sylvester", "analyze", "--in", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("coeffs"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "no-such-suite"]).0, 2);
    assert_eq!(run(&["--shape", "1,2", "verify", "lemma-suck"]).0, 2);
    assert_eq!(run(&["structure", "generate", "--b", "2", "--e", "0"]).0, 2);
    assert_eq!(run(&["--shape", "2,2,5,5", "structure", "generate", "--b", "2", "--e", "1"]).0, 2);
}

#[test]
fn verify_lemma_suck_on_one_shape() {
    let (code, out, _) = run(&["verify", "lemma-suck", "--shape", "2,2,3,4", "--trials", "200", "--seed", "7"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["trials"], 200);
    assert_eq!(v["shapes"], serde_json::json!(["2,2,3,4"]));
}

#[test]
fn generate_analyze_and_verify_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let inst_s = inst.to_str().unwrap();
    let (code, _, err) =
        run(&["--shape", "2,2,5,5", "--seed", "3", "--out", inst_s, "structure", "generate", "--b", "3", "--e", "1"]);
    assert_eq!(code, 0, "{err}");
    let meta = json(&std::fs::read_to_string(&inst).unwrap())["metadata"].clone();
    let (code, out, err) = run(&["structure", "analyze", "--in", inst_s]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["kind"], "beta");
    assert_eq!(v["b"], meta["b"]);
    assert_eq!(v["E"], meta["E"]);
    let (code, out, err) = run(&["structure", "verify-ee7", "--in", inst_s, "--extra", "2"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn tangent_commands() {
    let dir = tempfile::tempdir().unwrap();
    let jet = write(dir.path(), "jet.json", r#"{"degrees":[2,3],"base":[[1,0],[1,1]],"dir":[[0,1],[1,-1]]}"#);
    let (code, out, _) = run(&["tangent", "rank", "--jet", &jet]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["rank"], 5);
    assert_eq!(v["dependency_set"], serde_json::json!([1, 2]));
    for extra in [None, Some("--reducible")] {
        let mut args = vec!["tangent", "decompose", "--jet", jet.as_str()];
        args.extend(extra);
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        assert_eq!(json(&out)["terms"].as_array().unwrap().len(), 5);
    }
    let single = write(dir.path(), "single.json", r#"{"degrees":[2,3],"base":[[1,0],[1,1]],"dir":[[0,1],[2,2]]}"#);
    let (code, out, _) = run(&["tangent", "rank", "--jet", &single]);
    assert_eq!((code, json(&out)["rank"].as_u64()), (0, Some(2)));
    assert_eq!(run(&["tangent", "decompose", "--reducible", "--jet", &single]).0, 1);
}

#[test]
fn sampled_decompositions_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "q.json", r#"{"d":4,"coeffs":[0,1,0,0,0]}"#);
    let (code, out, _) = run(&["--seed", "9", "sylvester", "sample", "--in", &path, "--count", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 3);
    assert_ne!(samples[0], samples[1]);
}

#[test]
fn binary_reports_are_deterministic_and_exit_codes_propagate() {
    let bin = env!("CARGO_BIN_EXE_bihom");
    let go = || Command::new(bin).args(["verify", "lemma-b3", "--trials", "5", "--seed", "11"]).output().unwrap();
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &std::process::Output| {
        let mut v = json(std::str::from_utf8(&o.stdout).unwrap());
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let bad = Command::new(bin).args(["verify"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
