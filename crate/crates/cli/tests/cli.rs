//! End-to-end tests of the binary: exit codes, JSON contracts, DOT shape.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_interactions"));
    cmd.env_remove("INTERACTIONS_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

fn assert_matches_schema(name: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file exists"))
            .expect("schema file is JSON");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name} violations: {errors:#?}");
}

/// Errors must be a single machine-parsable line: `error: <kind>: <message>`.
fn assert_error_line(out: &Output, kind: &str) {
    let err = stderr_str(out);
    assert_eq!(err.lines().count(), 1, "one-line error, got: {err:?}");
    assert!(
        err.starts_with(&format!("error: {kind}: ")),
        "expected kind {kind}, got: {err:?}"
    );
}

#[test]
fn zoo_list_names_every_entry() {
    let out = run(&["zoo", "list"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    for name in [
        "exclusion",
        "k-exclusion",
        "multi-species",
        "glauber",
        "lge",
        "n-lane",
        "two-species-annihilation",
        "fig14",
        "new-interaction",
        "mips",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn analyze_glauber_reports_no_conserved_structure() {
    let out = run(&["analyze", "zoo:glauber", "--format", "json"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_matches_schema("analysis.schema.json", &report);
    assert_eq!(report["dim"], 0);
    assert_eq!(report["separable"], false);
    assert_eq!(report["components"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_identifies_the_fusion_interaction() {
    let out = run(&["analyze", "zoo:new-interaction", "--identify", "--format", "json"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_matches_schema("analysis.schema.json", &report);
    assert_eq!(report["dim"], 1);
    assert_eq!(report["separable"], true);
    assert_eq!(report["integer_basis"], serde_json::json!([["0", "2", "3", "4"]]));
    assert_eq!(report["class"], "new-interaction");
}

#[test]
fn classify_three_separable_lists_five_classes() {
    let out = run(&["classify", "3", "--separable", "--format", "json"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_matches_schema("classify.schema.json", &report);
    assert_eq!(report["total"], 5);
    let dims: Vec<u64> = report["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![3, 2, 2, 1, 1]);
}

#[test]
fn classify_text_table_has_five_rows() {
    let out = run(&["classify", "3", "--separable"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    // header + five classes + summary
    assert_eq!(text.lines().count(), 7, "unexpected table:\n{text}");
    assert!(text.lines().last().unwrap().starts_with("5 class(es) on 4 states"));
}

#[test]
fn iq_fig14_fails_on_the_two_site_path() {
    let out = run(&["iq", "zoo:fig14", "--graphs", "paths:2..6", "--format", "json"]);
    assert!(out.status.success(), "a FAIL verdict is still a successful run");
    let report = stdout_json(&out);
    assert_matches_schema("iq.schema.json", &report);
    assert_eq!(report["derived"]["separable"], true);
    assert_eq!(report["derived"]["exchangeable"], true);
    assert_eq!(report["verdict"]["status"], "fail");
    assert_eq!(report["verdict"]["graph"], serde_json::json!({"kind": "path", "n": 2}));
    assert_eq!(report["verdict"]["witness"], serde_json::json!([[1, 3], [2, 2]]));

    let text = run(&["iq", "zoo:fig14", "--graphs", "paths:2..6"]);
    assert!(stdout_str(&text).contains("verdict: FAIL on path(2)"));
}

#[test]
fn iq_exclusion_passes_the_default_family() {
    let out = run(&["iq", "zoo:exclusion", "--format", "json"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_matches_schema("iq.schema.json", &report);
    assert_eq!(report["verdict"]["status"], "pass");
    assert!(!report["rows"].as_array().unwrap().is_empty());
    assert!(report["rows"].as_array().unwrap().iter().all(|r| r["matched"] == true));
}

#[test]
fn budget_env_var_guards_and_the_flag_overrides_it() {
    let out = bin()
        .args(["iq", "zoo:exclusion"])
        .env("INTERACTIONS_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert_error_line(&out, "guard");

    let out = bin()
        .args(["iq", "zoo:exclusion", "--budget", "1000000"])
        .env("INTERACTIONS_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "flag must take precedence over the environment");

    let out = bin()
        .args(["iq", "zoo:exclusion"])
        .env("INTERACTIONS_BUDGET", "plenty")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert_error_line(&out, "domain");
}

#[test]
fn exit_codes_separate_error_kinds() {
    let out = run(&["analyze", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert_error_line(&out, "io");

    let out = run(&["analyze", "zoo:nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert_error_line(&out, "domain");

    let out = run(&["classify", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_error_line(&out, "guard");

    let out = run(&["analyze", "zoo:exclusion", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(1));
    assert_error_line(&out, "domain");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"states\": [\"a\"]").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_error_line(&out, "domain");
}

#[test]
fn wedge_output_feeds_back_through_stdin() {
    let out = run(&["combine", "--wedge", "zoo:exclusion", "zoo:k-exclusion:2"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_matches_schema("interaction.schema.json", &doc);
    assert_eq!(doc["states"].as_array().unwrap().len(), 4);

    let analyzed = run_with_stdin(&["analyze", "-", "--format", "json"], &stdout_str(&out));
    assert!(analyzed.status.success());
    let report = stdout_json(&analyzed);
    assert_eq!(report["dim"], 2, "wedge dimensions add");
}

#[test]
fn box_product_respects_the_dimension_law() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.json");
    let out = run(&[
        "combine",
        "--box",
        "zoo:exclusion",
        "zoo:glauber",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_matches_schema("interaction.schema.json", &doc);

    let report = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert!(report.status.success());
    assert_eq!(stdout_json(&report)["dim"], 1, "1 + 0 with an exchangeable factor");
}

#[test]
fn export_dot_is_structurally_sound() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lge2.dot");
    let out = run(&["export-dot", "zoo:lge:2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();

    assert!(dot.starts_with("graph interaction {\n"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
    assert!(dot.contains("label=\"values ("));

    // every edge endpoint is declared as a node in some cluster
    let declared: Vec<&str> = dot
        .lines()
        .map(str::trim)
        .filter(|l| l.starts_with('"') && l.ends_with(';') && !l.contains("--"))
        .map(|l| l.trim_end_matches(';'))
        .collect();
    let mut edges = 0;
    for line in dot.lines().map(str::trim).filter(|l| l.contains(" -- ")) {
        edges += 1;
        let (a, b) = line.trim_end_matches(';').split_once(" -- ").unwrap();
        assert!(declared.contains(&a), "undeclared endpoint {a}");
        assert!(declared.contains(&b), "undeclared endpoint {b}");
    }
    assert!(edges > 0, "no edges rendered");
}

#[test]
fn zoo_build_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lanes.json");
    let out = run(&["zoo", "build", "n-lane", "1", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_matches_schema("interaction.schema.json", &doc);

    let report = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout_json(&report)["dim"], 2, "one conserved quantity per lane");
}

#[test]
fn help_and_version_exit_zero() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("interactions"));

    let out = run(&["--version"]);
    assert!(out.status.success());
}

#[test]
fn missing_subcommand_is_a_domain_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
    assert_error_line(&out, "domain");
}
