use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krein-kernels"))
        .args(args)
        .env("KREIN_KERNELS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"alpha\": [1, 0], ").unwrap();
    let out = bin(&["construct-schur", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn unknown_fields_and_missing_input_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let extra = dir.path().join("extra.json");
    std::fs::write(&extra, r#"{"state": [2, 1], "colour": "red"}"#).unwrap();
    assert_eq!(
        bin(&["random-colligation", "--input", extra.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["kernel-report"]).status.code(), Some(2));
    assert_eq!(
        bin(&["classify-region", "--input", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["verify-identities", "--tol", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_thread_count_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_krein-kernels"))
        .args(["random-colligation"])
        .env("KREIN_KERNELS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_suite_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{"suites": ["resolvent", "kernel_equality", "unified"],
            "config": {"draws": 5, "colligations": 3, "point_pairs": 4, "j0_transforms": 3}}"#,
    )
    .unwrap();
    let a = bin(&[
        "verify-identities",
        "--input",
        suite.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    let b = bin(&[
        "verify-identities",
        "--input",
        suite.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["command"], "verify-identities");
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn random_colligation_feeds_kernel_report() {
    let out = bin(&[
        "random-colligation",
        "--input",
        data("shape.json").to_str().unwrap(),
        "--seed",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let col = report(&out)["data"]["colligation"].clone();
    let job = serde_json::json!({ "colligation": col, "setting": "half_plane", "point_count": 5 });
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("job.json");
    std::fs::write(&input, job.to_string()).unwrap();
    let out = bin(&["kernel-report", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(
        check(&r, "kernel/routes_agree")["residual"]
            .as_f64()
            .unwrap()
            < 1e-9
    );
}

#[test]
fn bundled_kernel_job_dumps_gram_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("k.json");
    let out = bin(&[
        "kernel-report",
        "--input",
        data("kernel_job.json").to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
        "--dump-gram",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    let n = r["data"]["gram_inertia"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum::<u64>();
    let csv = std::fs::read_to_string(dir.path().join("k.gram.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("row,col,re,im"));
    assert_eq!(lines.count() as u64, n * n);
}

#[test]
fn dump_gram_without_output_is_an_input_error() {
    let out = bin(&[
        "kernel-report",
        "--input",
        data("kernel_job.json").to_str().unwrap(),
        "--dump-gram",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_blaschke_model_round_trips() {
    let out = bin(&[
        "construct-schur",
        "--input",
        data("blaschke_model.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    for name in [
        "construction/kernel_match_state_space",
        "construction/kernel_match_realized_function",
    ] {
        assert!(check(&r, name)["residual"].as_f64().unwrap() < 1e-8);
    }
    assert_eq!(r["data"]["slack_inertia"]["n_minus"], 0);
}

#[test]
fn inequality_violation_is_a_failing_check() {
    // A large E with P = 1 and A = 0 makes the slack negative.
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.json");
    std::fs::write(
        &input,
        r#"{"alpha": [1, 0], "gram": [[[1, 0]]], "a_alpha": [[[0, 0]]], "e_alpha": [[[20, 0]]]}"#,
    )
    .unwrap();
    let out = bin(&["construct-schur", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!check(&report(&out), "construction/slack_positive")["pass"]
        .as_bool()
        .unwrap());
}

#[test]
fn classify_bundled_pair() {
    let out = bin(&[
        "classify-region",
        "--input",
        data("half_plane_pair.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let zones: Vec<_> = report(&out)["data"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["zone"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(
        zones,
        ["omega_plus", "omega_minus", "omega_zero", "omega_plus"]
    );
}

#[test]
fn quaternion_suite_small() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("q.json");
    std::fs::write(&cfg, r#"{"draws": 4, "point_pairs": 3}"#).unwrap();
    let out = bin(&[
        "quaternion-suite",
        "--input",
        cfg.to_str().unwrap(),
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["command"], "quaternion-suite");
}
