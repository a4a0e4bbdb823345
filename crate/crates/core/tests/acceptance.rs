//! Acceptance battery: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always print: `cargo test --test acceptance`.

use std::path::Path;
use std::process::Command;

use krein_kernels::suites::{Check, Suite, SuiteConfig};

const SEED: u64 = 20240917;

type Criterion = (&'static str, Box<dyn Fn() -> Vec<Check>>);

fn report(index: usize, title: &str, checks: &[Check]) -> bool {
    let ok = !checks.is_empty() && checks.iter().all(|c| c.pass);
    println!(
        "[{}] criterion {index}: {title}",
        if ok { "PASS" } else { "FAIL" }
    );
    for c in checks {
        println!(
            "       {} {:<58} residual {:<12.3e} threshold {:.0e}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.residual,
            c.threshold
        );
    }
    ok
}

fn run(suite: Suite) -> Vec<Check> {
    suite
        .run(SEED, &SuiteConfig::default())
        .unwrap_or_else(|e| panic!("{suite:?} suite errored: {e}"))
}

fn cli(args: &[&str], out: &Path) -> (i32, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_krein-kernels"))
        .args(args)
        .arg("--output")
        .arg(out)
        .env("KREIN_KERNELS_THREADS", "2")
        .status()
        .expect("binary runs");
    (
        status.code().unwrap_or(-1),
        std::fs::read(out).unwrap_or_default(),
    )
}

fn cli_determinism() -> Vec<Check> {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let (code_a, bytes_a) = cli(&["verify-identities", "--seed", "7"], &a);
    let (code_b, bytes_b) = cli(&["verify-identities", "--seed", "7"], &b);
    let q = dir.path().join("q.json");
    let (_, q1) = cli(&["quaternion-suite", "--seed", "11"], &q);
    let (_, q2) = cli(&["quaternion-suite", "--seed", "11"], &q);
    vec![
        Check::at_most(
            "cli/default_suite_exit_code",
            "cli-exit-code",
            code_a as f64,
            0.0,
        ),
        Check::at_most(
            "cli/second_run_exit_code",
            "cli-exit-code",
            code_b as f64,
            0.0,
        ),
        Check::at_most(
            "cli/verify_identities_byte_identical",
            "cli-determinism",
            if !bytes_a.is_empty() && bytes_a == bytes_b {
                0.0
            } else {
                1.0
            },
            0.0,
        ),
        Check::at_most(
            "cli/quaternion_suite_byte_identical",
            "cli-determinism",
            if !q1.is_empty() && q1 == q2 { 0.0 } else { 1.0 },
            0.0,
        ),
    ]
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "resolvent identity on disk and half-plane spans",
            Box::new(|| run(Suite::Resolvent)),
        ),
        (
            "Hardy-space inner-product identities and the (a, b) adjoint identity",
            Box::new(|| run(Suite::Hardy)),
        ),
        (
            "kernel equality: defining formula vs state space",
            Box::new(|| run(Suite::KernelEquality)),
        ),
        (
            "construction round trip on Blaschke model spaces",
            Box::new(|| run(Suite::Construction)),
        ),
        (
            "negative squares: bound and attainment",
            Box::new(|| run(Suite::NegativeSquares)),
        ),
        (
            "quaternionic half-space suite",
            Box::new(|| run(Suite::Quaternion)),
        ),
        (
            "(a, b) invariance and the resolvent-sum identity",
            Box::new(|| run(Suite::Unified)),
        ),
        (
            "CLI determinism and default suite exit code",
            Box::new(cli_determinism),
        ),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        if !report(i + 1, title, &f()) {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
