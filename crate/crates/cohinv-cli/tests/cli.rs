//! End-to-end tests of the binary: stream separation, exit codes, and the
//! bundled corpus.

use std::process::{Command, Output};

use serde_json::Value;

fn cohinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohinv"))
        .args(args)
        .env_remove("COHINV_CORPUS_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

#[test]
fn iszero_emits_json_on_stdout_and_text_on_stderr() {
    let out = cohinv(&["iszero", "--field", "Q", "--expr", "(2,3,5)"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "iszero");
    assert_eq!(v["result"]["is_zero"], true);
    assert!(!out.stderr.is_empty(), "human summary expected on stderr");
}

#[test]
fn json_flag_silences_the_summary() {
    let out = cohinv(&["--json", "iszero", "--field", "Q", "--expr", "(-1,-1)"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["result"]["is_zero"], false);
    assert!(out.stderr.is_empty());
}

#[test]
fn syntax_errors_carry_offsets_and_exit_2() {
    let out = cohinv(&["normalize", "--field", "Q(x)", "--expr", "(x,)"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], false);
    let message = v["error"].as_str().unwrap();
    assert!(
        message.contains("offset 3"),
        "unexpected message: {message}"
    );
}

#[test]
fn unknown_indeterminates_are_reported() {
    let out = cohinv(&["iszero", "--field", "Q(x)", "--expr", "(w)"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert!(v["error"]
        .as_str()
        .unwrap()
        .contains("unknown indeterminate"));
}

#[test]
fn prove_pro_passes_with_exit_0() {
    let out = cohinv(&["--json", "prove-pro"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["all_verified"], true);
    assert_eq!(v["result"]["lambda0"]["display"], "1");
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 5);
}

#[test]
fn rootcheck_subsets_run_independently() {
    let out = cohinv(&["--json", "rootcheck", "--klein"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["all_pass"], true);
    assert!(v["result"].get("gram").is_none());

    let out = cohinv(&["--json", "rootcheck"]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["gram"][2][2], 8);
}

#[test]
fn missing_witness_is_a_clear_error() {
    let out = cohinv(&[
        "tmap",
        "--field",
        "Q(x,y,z,a,b)",
        "--f3",
        "(x,y,z)",
        "--f5",
        "(a,b)*(x,y,z)",
        "--g3",
        "0",
    ]);
    // product-shaped f5 with a factor equal to f3: witness inferred
    assert!(out.status.success());

    let out = cohinv(&[
        "tmap",
        "--field",
        "Q(x,y,z,a,b)",
        "--f3",
        "(x,y,z)",
        "--f5",
        "(x,y,a,b,b) + (x,y,a,b,b)",
        "--g3",
        "0",
    ]);
    // this f5 is zero after cancellation, so no witness is needed
    assert!(out.status.success());

    let out = cohinv(&[
        "tmap",
        "--field",
        "Q(x,y,z,a,b)",
        "--f3",
        "(x,y,z)",
        "--f5",
        "(x,y,z,a,b) + (x,y,z,a,a)",
        "--g3",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert!(v["error"].as_str().unwrap().contains("--witness"));
}

#[test]
fn bundled_corpus_passes() {
    let out = cohinv(&["--json", "corpus"]);
    assert!(
        out.status.success(),
        "corpus failed: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    assert_eq!(v["result"]["all_pass"], true);
    assert!(v["result"]["cases"].as_array().unwrap().len() >= 10);
}

#[test]
fn corpus_directory_override_reports_diffs() {
    let dir = std::env::temp_dir().join(format!("cohinv-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = serde_json::json!({
        "schema": 1,
        "cases": [{
            "name": "deliberate-mismatch",
            "title": "a case whose expectation is wrong",
            "steps": [{
                "argv": ["iszero", "--field", "Q", "--expr", "(-1,-1)"],
                "expect": {"is_zero": true}
            }]
        }]
    });
    std::fs::write(dir.join("cases.json"), serde_json::to_string(&bad).unwrap()).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_cohinv"))
        .args(["--json", "corpus", "--dir"])
        .arg(&dir)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["all_pass"], false);
    let diffs = v["result"]["cases"][0]["diffs"].as_array().unwrap();
    assert!(!diffs.is_empty());

    // the env variable points at the same directory
    let out = Command::new(env!("CARGO_BIN_EXE_cohinv"))
        .args(["--json", "corpus"])
        .env("COHINV_CORPUS_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn spin16_direct_presentation_reports_the_gap() {
    let out = cohinv(&[
        "--json",
        "spin16",
        "--field",
        "Q(s,x1,x2,x3,x4)",
        "--q",
        "<s>*pf<<x1,x2,x3,x4>>",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["presentation"], "direct");
    assert_eq!(v["result"]["f5"]["display"], "(s,x1,x2,x3,x4)");
    assert_eq!(v["result"]["u5"]["unavailable"], "presentation required");
}

#[test]
fn embed_rejects_unknown_facts() {
    let out = cohinv(&[
        "embed", "--group", "Alt5", "--field", "C", "--facts", "sqrt7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert!(v["error"].as_str().unwrap().contains("sqrt7"));
}
