//! End-to-end runs of the frobenia binary: corpus round trips, frozen
//! desk values, exit codes, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

use frobenia_core::jsonio::{algebra_from_json, AlgebraJson};

fn frobenia_env(args: &[&str], dir: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frobenia"));
    cmd.args(args).current_dir(dir).env_remove("FROBENIA_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn frobenia(args: &[&str], dir: &Path) -> Output {
    frobenia_env(args, dir, &[])
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

const CORPUS: [&str; 6] = [
    "qc2.json",
    "f2c2.json",
    "qs3.json",
    "nakayama2.json",
    "hecke-a1-i.json",
    "hecke-a2-zeta3.json",
];

fn write_corpus(dir: &Path) {
    let out = frobenia(&["examples", "--out", "."], dir);
    assert_eq!(exit_code(&out), 0, "examples: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn corpus_files_reload_and_validate() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    for file in CORPUS {
        let out = frobenia(&["check", file], tmp.path());
        assert_eq!(exit_code(&out), 0, "{file} fails check");
        let v = stdout_json(&out);
        assert_eq!(v["isFrobenius"], true, "{file}");
        let text = std::fs::read_to_string(tmp.path().join(file)).unwrap();
        let parsed: AlgebraJson = serde_json::from_str(&text).unwrap();
        algebra_from_json(&parsed).unwrap();
    }
}

#[test]
fn identity_element_is_the_char_two_idempotent() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let out = frobenia(&["idempotents", "f2c2.json"], tmp.path());
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    let e = &v["pims"][0]["idempotents"][0]["e"];
    assert_eq!(e.as_array().unwrap(), &[serde_json::json!("1"), serde_json::json!("0")]);
}

#[test]
fn frozen_decomposition_matrices() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let out = frobenia(&["decomp", "qs3.json", "--prime", "3"], tmp.path());
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["decomposition"]["matrix"], serde_json::json!([[1, 0], [0, 1], [1, 1]]));
    let out = frobenia(&["decomp", "qs3.json", "--prime", "5"], tmp.path());
    let v = stdout_json(&out);
    assert_eq!(
        v["decomposition"]["matrix"],
        serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    );
    let out = frobenia(&["decomp", "qc2.json", "--prime", "2"], tmp.path());
    let v = stdout_json(&out);
    assert_eq!(v["decomposition"]["matrix"], serde_json::json!([[1], [1]]));
}

#[test]
fn james_identity_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let out = frobenia(
        &["james-check", "--type", "A2", "--e", "3", "--ell", "7", "--root", "2"],
        tmp.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["isIdentity"], true);
    assert_eq!(v["coprimeToGroupOrder"], true);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let a = frobenia(&["fs-verify", "qs3.json"], tmp.path());
    let b = frobenia(&["fs-verify", "qs3.json"], tmp.path());
    let c = frobenia(&["fs-verify", "qs3.json", "--jobs", "2"], tmp.path());
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "two identical runs diverge");
    assert_eq!(a.stdout, c.stdout, "a thread pool changes the output");
}

#[test]
fn seed_environment_overrides_the_flag() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let out = frobenia_env(
        &["c-tensor", "qc2.json", "--sample", "3", "--seed", "7"],
        tmp.path(),
        &[("FROBENIA_SEED", "9")],
    );
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["pims"][0]["seed"], 9);
}

#[test]
fn exit_codes_split_input_from_verification() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    // missing file
    let out = frobenia(&["check", "absent.json"], tmp.path());
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "io");
    // composite modulus
    let out = frobenia(&["decomp", "qs3.json", "--prime", "4"], tmp.path());
    assert_eq!(exit_code(&out), 2);
    // reduction of a positive characteristic algebra
    let out = frobenia(&["decomp", "f2c2.json", "--prime", "2"], tmp.path());
    assert_eq!(exit_code(&out), 2);
    // a degenerate trace form is a verification failure, not an input error
    let degenerate = r#"{
        "name": "degenerate", "field": {"kind": "rationals"}, "dim": 1,
        "basis_labels": ["1"], "unit": ["1"], "tau": ["0"],
        "structure": [[0, 0, 0, "1"]]
    }"#;
    std::fs::write(tmp.path().join("degenerate.json"), degenerate).unwrap();
    let out = frobenia(&["check", "degenerate.json"], tmp.path());
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout_json(&out)["isFrobenius"], false);
}

#[test]
fn manifest_lists_hashed_inputs_and_seed() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let out = frobenia(&["decomp", "qs3.json", "--prime", "3"], tmp.path());
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(stderr.lines().last().unwrap()).unwrap();
    assert!(manifest["command"].as_str().unwrap().starts_with("decomp"));
    assert_eq!(manifest["inputs"][0]["path"], "qs3.json");
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["seed"].as_u64().unwrap(), frobenia_core::DEFAULT_SEED);
    assert!(manifest["version"].is_string());
}

#[test]
fn table_flag_renders_aligned_text() {
    let tmp = tempfile::tempdir().unwrap();
    write_corpus(tmp.path());
    let out = frobenia(&["decomp", "qs3.json", "--prime", "3", "--table"], tmp.path());
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('{'), "table mode still prints JSON");
    assert!(text.contains("qs3-S2"));
}

#[test]
fn hecke_output_feeds_back_into_the_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let out = frobenia(&["hecke", "--type", "A2", "--param", "one"], tmp.path());
    assert_eq!(exit_code(&out), 0);
    std::fs::write(tmp.path().join("ha2.json"), &out.stdout).unwrap();
    let out = frobenia(&["decomp", "ha2.json", "--prime", "3"], tmp.path());
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["decomposition"]["matrix"], serde_json::json!([[1, 0], [0, 1], [1, 1]]));
}
