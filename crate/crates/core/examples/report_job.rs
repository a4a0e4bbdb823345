//! Run a CLI job in-process and inspect its report.

use krein_kernels::cli::{execute, Command, JobSpec};

fn main() -> Result<(), krein_kernels::cli::CliError> {
    let job = JobSpec {
        command: Command::ClassifyRegion,
        input: Some(concat!(env!("CARGO_MANIFEST_DIR"), "/data/half_plane_pair.json").into()),
        seed: 1,
        tol: 1e-9,
        output: None,
        dump_gram: None,
    };
    let (report, _) = execute(&job)?;
    for check in &report.checks {
        println!(
            "{:<5} {:<48} {:.2e}",
            if check.pass { "ok" } else { "FAIL" },
            check.name,
            check.residual
        );
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report.data["points"]).expect("json")
    );
    Ok(())
}
