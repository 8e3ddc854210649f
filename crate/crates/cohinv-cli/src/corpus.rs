//! The bundled reproduction corpus: named cases, each a list of command
//! invocations with expected JSON fragments, compared by subset matching.
//!
//! The default corpus is compiled in; `--dir` or the `COHINV_CORPUS_DIR`
//! environment variable point the runner at a directory of `.json` files
//! instead.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{execute, Cli, Command, Outcome};

pub const CORPUS_DIR_ENV: &str = "COHINV_CORPUS_DIR";

const BUNDLED: &str = include_str!("../corpus/cases.json");

#[derive(Debug, Deserialize)]
struct CorpusFile {
    schema: u32,
    cases: Vec<Case>,
}

#[derive(Debug, Deserialize)]
struct Case {
    name: String,
    title: String,
    steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
struct Step {
    argv: Vec<String>,
    expect: Value,
}

/// Compares `expected` against `actual`: objects require each expected key
/// to match recursively, arrays match elementwise with equal lengths, and
/// scalars must be equal.  Extra keys in `actual` are ignored.
fn subset_match(expected: &Value, actual: &Value, path: &str, diffs: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                match a.get(k) {
                    Some(av) => subset_match(ev, av, &format!("{path}/{k}"), diffs),
                    None => diffs.push(format!("{path}/{k}: missing (expected {ev})")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                diffs.push(format!(
                    "{path}: expected {} entries, found {}",
                    e.len(),
                    a.len()
                ));
                return;
            }
            for (i, (ev, av)) in e.iter().zip(a.iter()).enumerate() {
                subset_match(ev, av, &format!("{path}[{i}]"), diffs);
            }
        }
        _ => {
            if expected != actual {
                diffs.push(format!("{path}: expected {expected}, found {actual}"));
            }
        }
    }
}

fn load_corpus(dir: Option<&Path>) -> Result<Vec<CorpusFile>> {
    let dir = match dir {
        Some(d) => Some(d.to_path_buf()),
        None => std::env::var_os(CORPUS_DIR_ENV).map(Into::into),
    };
    match dir {
        None => Ok(vec![
            serde_json::from_str(BUNDLED).context("bundled corpus is invalid")?
        ]),
        Some(dir) => {
            let mut paths: Vec<_> = std::fs::read_dir(&dir)
                .with_context(|| format!("cannot read corpus directory {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e == "json"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                bail!("no .json corpus files in {}", dir.display());
            }
            paths
                .iter()
                .map(|p| {
                    let text = std::fs::read_to_string(p)
                        .with_context(|| format!("cannot read {}", p.display()))?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("invalid corpus file {}", p.display()))
                })
                .collect()
        }
    }
}

pub fn run_corpus(dir: Option<&Path>) -> Result<Outcome> {
    let files = load_corpus(dir)?;
    let mut case_reports: Vec<Value> = Vec::new();
    let mut all_pass = true;
    let mut human = String::new();
    for file in &files {
        if file.schema != crate::render::SCHEMA_VERSION {
            bail!("corpus schema {} is not supported", file.schema);
        }
        for case in &file.cases {
            let mut diffs: Vec<String> = Vec::new();
            for (i, step) in case.steps.iter().enumerate() {
                let mut argv = vec!["cohinv".to_string()];
                argv.extend(step.argv.iter().cloned());
                let cli = match Cli::try_parse_from(&argv) {
                    Ok(cli) => cli,
                    Err(e) => {
                        diffs.push(format!("step {i}: cannot parse argv: {e}"));
                        continue;
                    }
                };
                if matches!(cli.command, Command::Corpus { .. }) {
                    diffs.push(format!("step {i}: corpus cases cannot nest"));
                    continue;
                }
                match execute(&cli.command) {
                    Ok(outcome) => {
                        subset_match(
                            &step.expect,
                            &outcome.result,
                            &format!("step {i}"),
                            &mut diffs,
                        );
                    }
                    Err(e) => diffs.push(format!("step {i}: command failed: {e}")),
                }
            }
            let pass = diffs.is_empty();
            all_pass &= pass;
            human.push_str(&format!(
                "{} {} ({})\n",
                if pass { "PASS" } else { "FAIL" },
                case.name,
                case.title
            ));
            for d in &diffs {
                human.push_str(&format!("     {d}\n"));
            }
            case_reports.push(json!({
                "name": case.name,
                "title": case.title,
                "pass": pass,
                "diffs": diffs,
            }));
        }
    }
    human.push_str(if all_pass {
        "corpus: all cases pass"
    } else {
        "corpus: FAILURES present"
    });
    Ok(Outcome {
        result: json!({"cases": case_reports, "all_pass": all_pass}),
        checks_pass: all_pass,
        human,
    })
}
