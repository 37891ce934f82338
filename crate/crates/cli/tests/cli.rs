//! End-to-end tests of the binary: output documents, exit codes, cache
//! behavior and byte-level determinism, all through real process spawns.

use std::path::Path;
use std::process::{Command, Output};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contact-curves"))
        .args(args)
        .current_dir(dir)
        .env_remove("CONTACT_CURVES_CACHE_DIR")
        .output()
        .expect("binary spawns")
}

fn sandbox() -> tempfile::TempDir {
    tempfile::tempdir().expect("temp dir")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one valid JSON document")
}

#[test]
fn compute_contact_degree_two_is_forty() {
    let dir = sandbox();
    let out = run_in(dir.path(), &["compute", "--degree", "2", "--invariant", "contact"]);
    let json = stdout_json(&out);
    assert_eq!(json["value"]["num"], "40");
    assert_eq!(json["value"]["den"], "1");
    assert_eq!(json["is_integer"], true);
    assert_eq!(json["graph_classes"], 30);
    assert_eq!(json["kind"], "contact");
}

#[test]
fn compute_json_is_byte_identical_for_fixed_seed() {
    let dir = sandbox();
    let args = [
        "compute", "--degree", "2", "--invariant", "gw-lines", "--seed", "9", "--no-timing",
    ];
    let first = run_in(dir.path(), &args);
    let second = run_in(dir.path(), &args);
    assert!(first.status.success() && second.status.success());
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "same seed must print identical bytes");
    let json = stdout_json(&first);
    assert_eq!(json["value"]["num"], "92");
    assert!(json.get("elapsed_ms").is_none(), "--no-timing must drop the timing field");
}

#[test]
fn compute_rejects_degree_zero_with_usage_error() {
    let dir = sandbox();
    let out = run_in(dir.path(), &["compute", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty(), "errors must not pollute stdout");
    assert!(!out.stderr.is_empty(), "diagnostics belong on stderr");
}

#[test]
fn compute_explicit_degenerate_lambda_exits_three() {
    let dir = sandbox();
    let out = run_in(
        dir.path(),
        &["compute", "--degree", "2", "--lambda", "1,3,2,7"],
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("degenerate"),
        "stderr must name the degeneracy, got: {stderr}"
    );
}

#[test]
fn compute_explicit_lambda_works_and_repeated_weights_are_usage_errors() {
    let dir = sandbox();
    let ok = run_in(
        dir.path(),
        &["compute", "--degree", "1", "--lambda", "0,1,3,7", "--invariant", "gw-lines"],
    );
    let json = stdout_json(&ok);
    assert_eq!(json["value"]["num"], "2");
    assert_eq!(json["specializations"].as_array().map(Vec::len), Some(1));

    let bad = run_in(dir.path(), &["compute", "--degree", "1", "--lambda", "0,0,3,7"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn compute_unreachable_agreement_budget_exits_three() {
    let dir = sandbox();
    let out = run_in(dir.path(), &["compute", "--degree", "1", "--agree", "33"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flags_are_rejected() {
    let dir = sandbox();
    let out = run_in(dir.path(), &["compute", "--degree", "2", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn help_exits_zero() {
    let dir = sandbox();
    let out = run_in(dir.path(), &["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}

#[test]
fn graphs_counts_and_stats() {
    let dir = sandbox();
    let plain = stdout_json(&run_in(dir.path(), &["graphs", "--degree", "1"]));
    assert_eq!(plain["count"], 6);
    assert_eq!(plain["classes"].as_array().map(Vec::len), Some(6));

    let stats = stdout_json(&run_in(dir.path(), &["graphs", "--degree", "2", "--stats"]));
    assert_eq!(stats["classes"], 30);
    let types = stats["types"].as_array().expect("type list");
    let total: u64 = types.iter().map(|t| t["class_count"].as_u64().unwrap()).sum();
    assert_eq!(total, 30);

    let dot = run_in(dir.path(), &["graphs", "--degree", "1", "--format", "dot"]);
    assert!(dot.status.success());
    let text = String::from_utf8_lossy(&dot.stdout);
    assert!(text.contains("graph class_0") && text.contains("--"));

    let conflict = run_in(
        dir.path(),
        &["graphs", "--degree", "1", "--format", "dot", "--stats"],
    );
    assert_eq!(conflict.status.code(), Some(1));
}

#[test]
fn graphs_populates_and_reuses_the_cache_directory() {
    let dir = sandbox();
    let cache = dir.path().join("cache-here");
    let cache_str = cache.to_str().expect("utf-8 temp path");
    let first = run_in(
        dir.path(),
        &["graphs", "--degree", "2", "--cache-dir", cache_str],
    );
    assert!(first.status.success());
    let cache_file = cache.join("graphs-d2.json");
    assert!(cache_file.is_file(), "cache file must be created");

    // A second run must give the same document from the cached classes.
    let second = run_in(
        dir.path(),
        &["graphs", "--degree", "2", "--cache-dir", cache_str],
    );
    assert_eq!(first.stdout, second.stdout);

    // A corrupted cache is rebuilt transparently, not trusted and not fatal.
    std::fs::write(&cache_file, "{ not json").expect("overwrite cache");
    let repaired = run_in(
        dir.path(),
        &["graphs", "--degree", "2", "--cache-dir", cache_str],
    );
    assert!(repaired.status.success());
    assert_eq!(first.stdout, repaired.stdout);
}

#[test]
fn cache_environment_variable_is_honored() {
    let dir = sandbox();
    let env_cache = dir.path().join("env-cache");
    let out = Command::new(env!("CARGO_BIN_EXE_contact-curves"))
        .args(["graphs", "--degree", "1"])
        .current_dir(dir.path())
        .env("CONTACT_CURVES_CACHE_DIR", &env_cache)
        .output()
        .expect("binary spawns");
    assert!(out.status.success());
    assert!(env_cache.join("graphs-d1.json").is_file());
}

#[test]
fn configs_tables_and_unknown_family() {
    let dir = sandbox();
    let cubics = stdout_json(&run_in(dir.path(), &["configs", "--family", "cubics"]));
    assert_eq!(cubics["total"], 3080);
    assert!(cubics["assumption"]
        .as_str()
        .expect("assumption banner")
        .starts_with("ASSUMPTION"));

    let quartics = stdout_json(&run_in(dir.path(), &["configs", "--family", "quartics"]));
    assert_eq!(quartics["total"], 710_080);

    let unknown = run_in(dir.path(), &["configs", "--family", "quintics"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn legendrian_verify_and_osculation() {
    let dir = sandbox();
    let cubic = stdout_json(&run_in(
        dir.path(),
        &["legendrian", "--curve", "buczynski:2,1", "--action", "verify"],
    ));
    assert_eq!(cubic["is_contact"], true);
    assert_eq!(cubic["pairing"], "0");
    assert_eq!(cubic["degree"], 3);

    let line = stdout_json(&run_in(
        dir.path(),
        &["legendrian", "--curve", "1,0;0,1;0;0", "--action", "verify"],
    ));
    assert_eq!(line["is_contact"], false);
    assert_ne!(line["pairing"], "0");

    let oscu = stdout_json(&run_in(
        dir.path(),
        &[
            "legendrian", "--curve", "buczynski:3,1", "--point", "1,0", "--action", "osculation",
        ],
    ));
    assert_eq!(oscu["multiplicity"], "4");

    let generic = stdout_json(&run_in(
        dir.path(),
        &[
            "legendrian", "--curve", "buczynski:3,1", "--point", "1,1", "--action", "osculation",
        ],
    ));
    assert_eq!(generic["multiplicity"], "3");

    let missing_point = run_in(
        dir.path(),
        &["legendrian", "--curve", "buczynski:3,1", "--action", "osculation"],
    );
    assert_eq!(missing_point.status.code(), Some(1));

    let non_coprime = run_in(dir.path(), &["legendrian", "--curve", "buczynski:4,2"]);
    assert_eq!(non_coprime.status.code(), Some(1));

    let zero_point = run_in(
        dir.path(),
        &[
            "legendrian", "--curve", "buczynski:3,1", "--point", "0,0", "--action", "osculation",
        ],
    );
    assert_eq!(zero_point.status.code(), Some(1));
}

#[test]
fn legendrian_accepts_rational_coefficient_lists() {
    let dir = sandbox();
    // A twisted cubic written out explicitly — (t^3, s^3/3, s^2 t, s t^2),
    // coefficients listed from the pure t-power up to the pure s-power.
    let json = stdout_json(&run_in(
        dir.path(),
        &[
            "legendrian",
            "--curve",
            "1,0,0,0;0,0,0,1/3;0,0,1,0;0,1,0,0",
            "--action",
            "verify",
        ],
    ));
    assert_eq!(json["is_contact"], true);
    assert_eq!(json["degree"], 3);
}

#[test]
fn csv_and_text_formats_stay_on_one_stream() {
    let dir = sandbox();
    let csv = run_in(
        dir.path(),
        &["compute", "--degree", "1", "--lambda", "0,1,3,7", "--format", "csv"],
    );
    assert!(csv.status.success());
    let text = String::from_utf8_lossy(&csv.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,kind,num,den,is_integer,graph_classes"));
    assert_eq!(lines.next(), Some("1,contact,2,1,true,6"));
    assert_eq!(lines.next(), None);

    let txt = run_in(
        dir.path(),
        &[
            "compute", "--degree", "1", "--lambda", "0,1,3,7", "--format", "text", "--no-timing",
        ],
    );
    let line = String::from_utf8_lossy(&txt.stdout);
    assert!(line.contains("degree 1 contact = 2"), "got: {line}");
    assert!(!line.contains("ms"), "--no-timing must drop the timing suffix");
}
