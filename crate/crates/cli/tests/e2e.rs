//! End-to-end tests that drive the installed `qtsuper` binary exactly the
//! way a shell user would: spawn it, capture stdout/stderr, check exit codes.

use std::process::{Command, Output};
use std::str::FromStr;

use qtsuper_core::exactalg::RatFunc;

fn qtsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtsuper"))
        .args(args)
        .env_remove("QTSUPER_FAULT")
        .output()
        .expect("binary spawns")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

fn rf(s: &str) -> RatFunc {
    RatFunc::from_str(s).expect("test expression parses")
}

/// Extracts `partition -> coeff` from the JSON polynomial document.
fn json_terms(doc: &serde_json::Value) -> Vec<(String, String)> {
    doc["terms"]
        .as_array()
        .expect("terms is an array")
        .iter()
        .map(|t| {
            (
                t["partition"].as_str().expect("partition is a string").to_string(),
                t["coeff"].as_str().expect("coeff is a string").to_string(),
            )
        })
        .collect()
}

#[test]
fn polynomial_json_output_is_exact_and_schema_versioned() {
    let out = qtsuper(&["poly", "--basis", "macdonald", "--partition", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(stdout_of(&out)).expect("stdout is JSON");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["basis"], "macdonald");
    assert_eq!(doc["partition"], "1");
    assert_eq!(
        json_terms(&doc),
        vec![("1".to_string(), "1".to_string())]
    );
}

#[test]
fn polynomial_coefficients_roundtrip_through_the_expression_parser() {
    let out = qtsuper(&["poly", "--basis", "jack", "--partition", "2"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(stdout_of(&out)).expect("stdout is JSON");
    let terms = json_terms(&doc);
    assert_eq!(terms.len(), 2);
    for (partition, coeff) in &terms {
        let parsed = rf(coeff);
        match partition.as_str() {
            "2" => assert_eq!(parsed, rf("alpha/(1+alpha)")),
            "1,1" => assert_eq!(parsed, rf("1/(1+alpha)")),
            other => panic!("unexpected power-sum index {other}"),
        }
    }
}

#[test]
fn schur_coefficients_are_plain_rationals_in_text_format() {
    let out = qtsuper(&[
        "poly", "--basis", "schur", "--partition", "1,1", "--format", "text",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let mut seen = 0;
    for line in stdout_of(&out).lines() {
        let (index, coeff) = line.split_once('\t').expect("tab-separated line");
        let parsed = rf(coeff);
        match index {
            "p[2]" => assert_eq!(parsed, rf("-1/2")),
            "p[1,1]" => assert_eq!(parsed, rf("1/2")),
            other => panic!("unexpected power-sum index {other}"),
        }
        seen += 1;
    }
    assert_eq!(seen, 2);
}

#[test]
fn malformed_arguments_are_usage_errors() {
    // increasing parts are not a partition
    let out = qtsuper(&["poly", "--basis", "jack", "--partition", "2,3"]);
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout_of(&out));
    assert!(stderr_of(&out).contains("partition"));

    // non-numeric part
    let out = qtsuper(&["poly", "--basis", "jack", "--partition", "two"]);
    assert_eq!(out.status.code(), Some(2));

    // lattice base outside (0, 1)
    let out = qtsuper(&["verify", "--suite", "lattice", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("q"));

    // unparseable rational
    let out = qtsuper(&["verify", "--suite", "lattice", "--a", "minus-one"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown subcommand (argument parser's own error path)
    let out = qtsuper(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn moment_table_formats_carry_the_same_exact_values() {
    let json_out = qtsuper(&["moments", "--family", "qt", "--max-p", "2"]);
    assert!(json_out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(stdout_of(&json_out)).expect("stdout is JSON");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["family"], "qt");
    let entries = doc["entries"].as_array().expect("entries is an array");
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["p"], 1);
    assert_eq!(
        rf(entries[0]["value"].as_str().expect("value is a string")),
        rf("(1+a)*(1-u)/(1-t)")
    );

    let csv_out = qtsuper(&[
        "moments", "--family", "qt", "--max-p", "2", "--format", "csv",
    ]);
    assert!(csv_out.status.success());
    let mut lines = stdout_of(&csv_out).lines();
    assert_eq!(lines.next(), Some("p,value"));
    for (line, entry) in lines.zip(entries) {
        let (p, value) = line.split_once(',').expect("one comma per data row");
        assert_eq!(p, entry["p"].to_string());
        assert_eq!(
            rf(value),
            rf(entry["value"].as_str().expect("value is a string"))
        );
    }
}

#[test]
fn gaussian_moment_table_zeroes_odd_orders() {
    let out = qtsuper(&[
        "moments", "--family", "gbeta", "--max-p", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let body: Vec<&str> = stdout_of(&out).lines().skip(1).collect();
    assert_eq!(body.len(), 4);
    assert!(body[0].starts_with("1,") && body[0].ends_with(",0"));
    assert!(body[2].starts_with("3,") && body[2].ends_with(",0"));
    let (_, second) = body[1].split_once(',').expect("csv row");
    assert_eq!(rf(second), rf("(N^2+N*(alpha-1))/2"));
}

#[test]
fn verification_suites_pass_cleanly() {
    let out = qtsuper(&["verify", "--suite", "gaussian"]);
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("PASS gaussian-normalization"));
    assert!(text.trim_end().ends_with("gaussian: 3 checks, 0 failed"));
    assert!(!text.contains("FAIL"));

    let out = qtsuper(&["verify", "--suite", "symbolic", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("PASS macdonald-duality"));
    assert!(text.trim_end().ends_with("symbolic: 14 checks, 0 failed"));
}

#[test]
fn injected_fault_is_caught_named_and_fails_the_run() {
    let out = Command::new(env!("CARGO_BIN_EXE_qtsuper"))
        .args(["verify", "--suite", "symbolic", "--max-degree", "1"])
        .env("QTSUPER_FAULT", "macdonald-norm")
        .output()
        .expect("binary spawns");
    assert_eq!(out.status.code(), Some(1), "stdout: {}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL macdonald-norm-identity"));
    assert!(text.contains("witness:"));
    // the fault is scoped to one check; its neighbours still pass
    assert!(text.contains("PASS jack-norm-identity"));
    assert!(text.contains("symbolic: 14 checks, 1 failed"));
}

#[test]
fn identical_invocations_are_byte_stable() {
    let args = ["moments", "--family", "gbeta", "--max-p", "4"];
    let first = qtsuper(&args);
    let second = qtsuper(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["verify", "--suite", "gaussian"];
    let first = qtsuper(&args);
    let second = qtsuper(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_flag_writes_the_payload_to_a_file() {
    let path = std::env::temp_dir().join(format!(
        "qtsuper-e2e-{}.csv",
        std::process::id()
    ));
    let direct = qtsuper(&["moments", "--family", "qt", "--max-p", "1", "--format", "csv"]);
    assert!(direct.status.success());
    let redirected = qtsuper(&[
        "--output",
        path.to_str().expect("temp path is UTF-8"),
        "moments", "--family", "qt", "--max-p", "1", "--format", "csv",
    ]);
    assert!(redirected.status.success());
    assert!(redirected.stdout.is_empty());
    let written = std::fs::read(&path).expect("payload file exists");
    std::fs::remove_file(&path).ok();
    assert_eq!(written, direct.stdout);
}
