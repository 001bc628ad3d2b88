//! End-to-end tests of the `psc` binary: exit codes, witness replay text,
//! and byte-stable structured output.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn psc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_psc"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        None => cmd.stdin(Stdio::null()),
        Some(_) => cmd.stdin(Stdio::piped()),
    };
    let mut child = cmd.spawn().expect("spawn psc");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().expect("wait psc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const PRIME_DOC: &str = r#"{
  "ring": {"u": 1},
  "lo": 0,
  "modules": [{"invariants": [4], "free": 0}, {"invariants": [], "free": 1}],
  "diffs": [[["2"]]],
  "parts": [{"gens": [["2"]]}, {"gens": [["1"]]}]
}"#;

const NOT_PRIME_DOC: &str = r#"{
  "ring": {"u": 1},
  "lo": 0,
  "modules": [{"invariants": [4], "free": 0}],
  "diffs": [],
  "parts": [{"gens": []}]
}"#;

#[test]
fn affirmative_verdict_exits_zero() {
    let o = psc(&["prime", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: Prime"));
}

#[test]
fn negative_verdict_exits_one_with_replayable_witness() {
    let o = psc(&["prime", "-"], Some(NOT_PRIME_DOC));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("verdict: NotPrime"), "{out}");
    // The zero submodule of Z/4: witness 2 * [2] = [0] ∈ S_0.
    assert!(out.contains("witness: 2 * [2] = [0] ∈ S_0"), "{out}");
}

#[test]
fn schema_errors_exit_two() {
    let o = psc(&["prime", "-"], Some("{\"ring\": {\"u\": 12}}"));
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));

    let o = psc(&["prime", "/nonexistent/path.json"], None);
    assert_eq!(o.status.code(), Some(2));

    // A subcommand that needs parts, on a document without them.
    let doc = r#"{"ring": {"u": 1}, "lo": 0,
        "modules": [{"invariants": [4], "free": 0}], "diffs": []}"#;
    let o = psc(&["prime", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_reports_position_of_broken_differential() {
    // ×1 from Z/2 to Z/4 is not a morphism: the relation 2·e maps to 2 ≠ 0.
    let doc = r#"{
      "ring": {"u": 1},
      "lo": 0,
      "modules": [{"invariants": [4], "free": 0}, {"invariants": [2], "free": 0}],
      "diffs": [[["1"]]]
    }"#;
    let o = psc(&["validate", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("degree"), "{}", stdout(&o));
}

#[test]
fn structured_output_is_byte_stable() {
    let a = psc(
        &["audit", "--trials", "30", "--seed", "3", "--format", "structured"],
        None,
    );
    let b = psc(
        &["audit", "--trials", "30", "--seed", "3", "--format", "structured"],
        None,
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timing").unwrap().is_null());
    assert_eq!(v["exit"], 0);

    let a = psc(&["prime", "--format", "structured", "-"], Some(NOT_PRIME_DOC));
    assert_eq!(a.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "NotPrime");
    assert_eq!(v["witness"]["replay"], "2 * [2] = [0] ∈ S_0");
}

#[test]
fn saturate_localize_tensor_scale_emit_documents() {
    let o = psc(&["saturate", "--prime", "2", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hypothesis"));

    let o = psc(&["localize", "--invert", "3", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z[1/3]"));

    // A localized document parses back and keeps its verdict.
    let o = psc(
        &["localize", "--invert", "3", "--format", "structured", "-"],
        Some(PRIME_DOC),
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let doc = serde_json::to_string(&v["document"]).unwrap();
    let o = psc(&["prime", "-"], Some(&doc));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = psc(&["tensor", "--rank", "3", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(0));

    let o = psc(&["scale", "--ideal", "2", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn avoid_uses_operands_key() {
    // S = (2·Z/4, Z) is prime; one operand equal to S satisfies both the
    // hypothesis and the conclusion.
    let doc = r#"{
      "ring": {"u": 1},
      "lo": 0,
      "modules": [{"invariants": [4], "free": 0}, {"invariants": [], "free": 1}],
      "diffs": [[["2"]]],
      "parts": [{"gens": [["2"]]}, {"gens": [["1"]]}],
      "operands": [[{"gens": [["2"]]}, {"gens": [["1"]]}]]
    }"#;
    let o = psc(&["avoid", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("holds"));

    // Without the operands key the input is rejected.
    let o = psc(&["avoid", "-"], Some(PRIME_DOC));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cech_subcommand_builds_and_decides() {
    let o = psc(&["cech", "--elements", "3,5,7"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d∘d = 0"));

    let doc = r#"{
      "cech": {"elements": [3, 5, 7]},
      "parts": [{"gens": [2]}, {"gens": [1, 1, 1]}, {"gens": [1, 1, 1]}, {"gens": [1]}]
    }"#;
    let o = psc(&["cech", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: Prime"));

    let bad = r#"{"cech": {"elements": [4, 6]}}"#;
    let o = psc(&["cech", "-"], Some(bad));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_check_agrees() {
    let o = psc(&["oracle-check", "--trials", "40", "--seed", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 disagreements"));
}
