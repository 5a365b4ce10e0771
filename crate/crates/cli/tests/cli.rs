//! Integration tests for the `germcalc` binary: script execution, exit
//! codes, JSON output shape, REPL error recovery, budget plumbing, and the
//! run → verify-witness round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_germcalc")
}

/// Run `germcalc run -` with the script on standard input.
fn run_script(script: &str) -> Output {
    run_script_env(script, &[])
}

fn run_script_env(script: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(["run", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn germcalc");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(script.as_bytes())
        .expect("write script");
    child.wait_with_output().expect("collect output")
}

fn json_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("stdout must be JSON lines"))
        .collect()
}

#[test]
fn complex_script_produces_json_verdicts() {
    let script = "\
field complex
ideal I = [x_1^2, x_2 - x_3]
member I x_1^2 + x_2 - x_3
member I x_1
radmem I x_1
nss I x_2 - x_3
";
    let out = run_script(script);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["verdict"]["outcome"], "proved");
    assert_eq!(lines[0]["verdict"]["witness"]["kind"], "ideal_membership");
    // x_1 is not in the ideal as a polynomial, but is in the local radical
    assert_eq!(lines[1]["verdict"]["outcome"], "refuted");
    assert_eq!(lines[1]["verdict"]["witness"]["kind"], "non_membership");
    assert_eq!(lines[2]["verdict"]["outcome"], "proved");
    assert_eq!(lines[2]["verdict"]["witness"]["kind"], "local_vanishing");
    assert_eq!(lines[3]["report"]["agreement"], "agree");
}

#[test]
fn real_family_script_round_trips_through_verifier() {
    let script = "\
field real
template I = [x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2]
pointgerm I dims 1..3
ideal K = [x_1^2 + (x_2 - x_3)^2]
pointgerm K dims 1..3
refute K x_2 {2: s, 3: s}
";
    let out = run_script(script);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["verdict"]["outcome"], "proved");
    assert_eq!(lines[1]["verdict"]["outcome"], "refuted");
    assert_eq!(lines[2]["verdict"]["outcome"], "refuted");

    // pipe the JSON output back through the verifier
    let mut child = Command::new(bin())
        .args(["verify-witness", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn verifier");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(&out.stdout)
        .expect("write verdicts");
    let verified = child.wait_with_output().expect("collect output");
    assert!(verified.status.success());
    assert!(
        String::from_utf8_lossy(&verified.stderr).contains("verified 3 witness(es)"),
        "stderr: {}",
        String::from_utf8_lossy(&verified.stderr)
    );
}

#[test]
fn shifted_point_and_restriction() {
    let script = "\
field real
point {1: 2}
invertible x_1
let g = x_1 + x_2
restrict g {1, 2}
";
    let out = run_script(script);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines[0]["result"], true, "x_1 has value 2 at the shifted point");
    assert_eq!(lines[1]["result"], "x_1 + x_2");
}

#[test]
fn script_error_stops_with_exit_1() {
    let script = "\
field real
let g = x_1 + x_2
restrict g {1}
invertible x_1
";
    let out = run_script(script);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error: line 3"), "stderr: {}", stderr);
    // nothing after the failing line runs
    assert!(json_lines(&out).is_empty());
}

#[test]
fn unknown_command_is_a_script_error() {
    let out = run_script("frobnicate I x_1\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budgets_flow_from_env_and_flags() {
    // a one-step basis budget starves the elimination: verdict is unknown
    let script = "\
field complex
ideal I = [x_1*x_2 - 1, x_1^2 + x_2^2]
radmem I x_1
";
    let out = run_script_env(script, &[("GERMCALC_BUDGETS", "enum=64,gb=1,curve=256")]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[0]["verdict"]["outcome"], "unknown");

    // a per-invocation flag overrides the environment
    let mut child = Command::new(bin())
        .args(["run", "-", "--gb-budget", "100000"])
        .env("GERMCALC_BUDGETS", "enum=64,gb=1,curve=256")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn germcalc");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(script.as_bytes())
        .expect("write script");
    let out = child.wait_with_output().expect("collect output");
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_ne!(lines[0]["verdict"]["outcome"], "unknown");
}

#[test]
fn per_query_field_override() {
    // over the reals x_1 is not in the local radical of (x_1^2 + x_2^2)'s
    // zero germ... it is; use x_1^2 + x_2^2 vs x_1 - x_2 instead: over the
    // complexes Z(x_1^2 + x_2^2) is two lines, so x_1 does not vanish on it
    let script = "\
field real
ideal I = [x_1^2 + x_2^2]
radmem I x_1
radmem I x_1 --field complex
";
    let out = run_script(script);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines[0]["verdict"]["outcome"], "proved", "real: the germ is a point");
    assert_eq!(lines[1]["verdict"]["outcome"], "refuted", "complex: two lines");
}

#[test]
fn repl_recovers_from_bad_lines() {
    let mut child = Command::new(bin())
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn repl");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"bogus line\nfield real\ninvertible x_1 + 1\n")
        .expect("write repl input");
    let out = child.wait_with_output().expect("collect output");
    assert!(out.status.success(), "repl errors must not be fatal");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error: line 1"), "stderr: {}", stderr);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["result"], true, "1 + x_1 is invertible at the origin");
}

#[test]
fn empty_input_verifies_zero_witnesses() {
    let mut child = Command::new(bin())
        .args(["verify-witness", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn verifier");
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("collect output");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("verified 0 witness(es)"));
}

#[test]
fn corrupted_witness_fails_verification() {
    // a syntactically valid witness whose claim is false: x_1 ∈ (x_2)
    let bogus = r#"{"kind": "ideal_membership", "target": {"field": "real", "text": "x_1"}, "gens": [{"field": "real", "text": "x_2"}]}"#;
    let mut child = Command::new(bin())
        .args(["verify-witness", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn verifier");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(bogus.as_bytes())
        .expect("write witness");
    let out = child.wait_with_output().expect("collect output");
    assert_eq!(out.status.code(), Some(1), "a false witness must be rejected");
}
