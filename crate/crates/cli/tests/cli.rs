//! End-to-end tests driving the compiled binary against the bundled
//! descriptor fixtures.

use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slinf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, Output) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let body: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "expected JSON on stdout, got error {e}:\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (body, out)
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn classify_periodic_shifted_example_both_variants() {
    // mu variant: not highest weight, not bounded, zero annihilator
    let (body, out) = run_json(&["classify", &fixture("example_mu.json")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["annihilator_nonzero"], Value::Bool(false));
    assert_eq!(body["tag"], Value::String("zero".into()));
    assert_eq!(body["highest_weight"]["highest_weight"], Value::Bool(false));
    assert!(body["highest_weight"]["witness"].is_string());
    assert_eq!(body["bounded"]["bounded"], Value::Bool(false));

    // eta variant over the same ambient weight: highest weight from the start
    let (body, out) = run_json(&["classify", &fixture("example_eta.json")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["annihilator_nonzero"], Value::Bool(false));
    assert_eq!(body["highest_weight"]["highest_weight"], Value::Bool(true));
    assert_eq!(body["highest_weight"]["k0"], Value::from(0));
    assert_eq!(body["bounded"]["bounded"], Value::Bool(false));
    assert!(body["lambda"].as_str().unwrap().contains("right-infinite"));
}

#[test]
fn classify_two_plateau_profile_is_bounded() {
    let (body, out) = run_json(&["classify", &fixture("two_plateau.json")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["bounded"]["bounded"], Value::Bool(true));
    assert_eq!(body["bounded"]["case"], Value::from(3));
    assert_eq!(body["annihilator_nonzero"], Value::Bool(true));
    assert_eq!(body["tag"]["r"], Value::from(0));
    assert_eq!(body["tag"]["g"], Value::from(1));
}

#[test]
fn classify_symmetric_power_limit() {
    let (body, out) = run_json(&["classify", &fixture("symlimit.json")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["variant"], Value::String("symmetric-power limit".into()));
    assert_eq!(body["annihilator_nonzero"], Value::Bool(true));
    assert_eq!(body["tag"]["r"], Value::from(1));
}

#[test]
fn support_lists_the_full_character_table() {
    let (body, out) = run_json(&["support", "2", "0", "-2"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["dimension"], Value::from(3));
    let weights = body["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 3);
    for entry in weights {
        assert_eq!(entry["multiplicity"], Value::from(1));
    }
    let listed: Vec<&str> = weights
        .iter()
        .map(|e| e["weight"].as_str().unwrap())
        .collect();
    for expected in ["(0,-2)", "(-1,-1)", "(-2,0)"] {
        assert!(listed.contains(&expected), "missing {expected} in {listed:?}");
    }

    // parenthesized single-argument form parses the same way
    let (body2, out2) = run_json(&["support", "2", "(0,-2)"]);
    assert_eq!(exit(&out2), 0);
    assert_eq!(body, body2);
}

#[test]
fn support_rejects_wrong_coordinate_count() {
    let out = run(&["support", "3", "0", "-2"]);
    assert_eq!(exit(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 3 coordinates"));
}

#[test]
fn blocks_prints_the_stored_decomposition() {
    let (body, out) = run_json(&["blocks", &fixture("example_mu.json")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(body["order"], Value::String("RightInfinite".into()));
    let period = &body["right_period"];
    assert_eq!(period["offset"], Value::from(-4));
    assert_eq!(period["pattern"][0]["lam"], Value::String("(0,-2)".into()));
    assert_eq!(period["pattern"][0]["mu"], Value::String("(-1,-1)".into()));
}

#[test]
fn exhaust_grows_the_truncation_chain() {
    let (body, out) = run_json(&["exhaust", &fixture("example_mu.json"), "--k", "3"]);
    assert_eq!(exit(&out), 0);
    let steps = body["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0]["lam"], Value::String("(0,-2)".into()));
    assert_eq!(steps[1]["lam"], Value::String("(0,-2,-4,-6)".into()));
    assert_eq!(steps[1]["next_mu"], Value::String("(-9,-9)".into()));
    assert_eq!(steps[1]["next_attach"], Value::String("Right".into()));
    assert_eq!(steps[2]["total"], Value::from(6));
}

#[test]
fn verify_fast_and_full_pass_on_a_valid_descriptor() {
    for level in ["fast", "full"] {
        let (body, out) = run_json(&["verify", &fixture("example_eta.json"), "--level", level]);
        assert_eq!(exit(&out), 0, "level {level}");
        assert_eq!(body["result"], Value::String("pass".into()));
        let checks = body["checks"].as_array().unwrap();
        assert!(checks
            .iter()
            .any(|c| c["name"] == "validation" && c["status"] == "pass"));
        assert!(checks
            .iter()
            .any(|c| c["name"] == "step 1 character" && c["status"] == "pass"));
        assert!(!checks.iter().any(|c| c["status"] == "fail"));
    }
}

#[test]
fn verify_rejects_invalid_support_weight_with_exit_2() {
    let (body, out) = run_json(&["verify", &fixture("invalid_mu.json")]);
    assert_eq!(exit(&out), 2);
    assert_eq!(body["result"], Value::String("fail".into()));
    let checks = body["checks"].as_array().unwrap();
    let validation = checks.iter().find(|c| c["name"] == "validation").unwrap();
    assert_eq!(validation["status"], Value::String("fail".into()));
    assert!(validation["detail"].as_str().unwrap().contains("(1,1)"));
}

#[test]
fn classify_rejects_invalid_descriptor_with_exit_2() {
    let out = run(&["classify", &fixture("invalid_mu.json")]);
    assert_eq!(exit(&out), 2);
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(exit(&run(&["no-such-command"])), 1);
    assert_eq!(exit(&run(&["classify"])), 1);
    assert_eq!(exit(&run(&["classify", "/no/such/file.json"])), 1);
    assert_eq!(exit(&run(&["--help"])), 0);
    assert_eq!(exit(&run(&["--version"])), 0);
}

#[test]
fn text_format_mirrors_json_leaves() {
    let out = run(&["classify", &fixture("example_eta.json")]);
    assert_eq!(exit(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("annihilator_nonzero = false"));
    assert!(text.contains("highest_weight.highest_weight = true"));
    assert!(text.contains("bounded.bounded = false"));
    assert!(text.contains("tag = zero"));
}

#[test]
fn json_output_is_deterministic() {
    let first = run(&["--format", "json", "exhaust", &fixture("example_mu.json"), "--k", "2"]);
    let second = run(&["--format", "json", "exhaust", &fixture("example_mu.json"), "--k", "2"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}
