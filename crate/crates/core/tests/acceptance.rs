//! The eleven acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::Command;

use mslab::suite::{run_criterion, SuiteConfig, CRITERIA};
use serde_json::Value;

fn suite_bytes() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mslab"))
        .args(["suite", "--seed", "42"])
        .output()
        .expect("run mslab");
    out.stdout
}

/// Sub-checks of a witness that report a failure.
fn failing_parts(w: Option<&Value>) -> Vec<String> {
    let Some(Value::Object(m)) = w else {
        return vec!["(no breakdown)".into()];
    };
    m.iter()
        .filter(|(_, v)| {
            v["pass"] == Value::Bool(false) || v["failures"].as_u64().is_some_and(|f| f > 0)
        })
        .map(|(k, v)| match v["failures"].as_u64() {
            Some(f) => format!("{k} ({f}/{})", v["runs"]),
            None => k.clone(),
        })
        .collect()
}

fn main() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for k in 1..=CRITERIA {
        match run_criterion(k, &cfg) {
            Ok(r) => {
                let counts: Vec<String> =
                    r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let word = if r.is_pass() { "PASS" } else { "FAIL" };
                println!(
                    "criterion {k:>2} {:<16} {word}  {}",
                    r.check,
                    counts.join(" ")
                );
                if !r.is_pass() {
                    println!(
                        "             failing: {}",
                        failing_parts(r.witness.as_ref()).join(", ")
                    );
                    failed.push(k);
                }
            }
            Err(e) => {
                println!("criterion {k:>2} error: {e}");
                failed.push(k);
            }
        }
    }
    let (a, b) = (suite_bytes(), suite_bytes());
    let same = !a.is_empty() && a == b;
    println!(
        "criterion 11 {:<16} {}  bytes={}",
        "determinism",
        if same { "PASS" } else { "FAIL" },
        a.len()
    );
    if !same {
        failed.push(11);
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
