//! Batch driver behind the `krein-kernels` binary.
//!
//! Every command reads an optional JSON input, runs a seeded battery and
//! writes a JSON report of `{name, paper_anchor, residual, pass}` checks.
//! Exit codes: 0 when every check passes, 1 on a failed check or a numerical
//! error, 2 on unreadable or invalid input.

pub mod input;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub use report::{gram_csv, Report, Summary};

use crate::error::Error;
use crate::indefinite::{coisometry_defect, inertia_relative};
use crate::kernel_spaces::{gram_matrix, PointChoice, Setting};
use crate::linalg::{hermitian_defect, max_abs, max_diff, CMat, C64};
use crate::rng::SplitMix64;
use crate::schur::{
    construct_from_space, random_colligation, sample_regular_points, Colligation, Construction,
    FiniteModelSpace,
};
use crate::suites::{
    ab_pair_checks, blaschke_kernel, blaschke_model_space, kernel_match, round_trip_grid, Check,
    Suite, SuiteConfig,
};
use crate::unified::{construct_from_space_unified, AbPair, Zone};
use input::{
    parse_json, read_json, ColligationFile, KernelJobFile, ModelFile, RegionJobFile, SettingFile,
    ShapeFile, SuiteFile,
};

/// Suite run by `verify-identities` when no input is given.
pub const DEFAULT_SUITE: &str = include_str!("../../data/default_suite.json");

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "KREIN_KERNELS_THREADS";

const MAX_POINTS: usize = 32;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Numerical(#[from] Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) | CliError::Output(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Run identity suites (the bundled default suite without --input).
    VerifyIdentities,
    /// Draw a seeded coisometric colligation.
    RandomColligation,
    /// Compare both kernel routes of a colligation and count negative squares.
    KernelReport,
    /// Build a colligation from a model space.
    ConstructSchur,
    /// Classify points for an (a, b) pair and check its invariances.
    ClassifyRegion,
    /// Run the quaternionic half-space suite.
    QuaternionSuite,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s} is not a positive number")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "krein-kernels",
    version,
    about = "Indefinite kernels, Schur realizations and quaternionic identities"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// JSON input file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Relative tolerance for rank and inertia decisions.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Also write the Gram matrix as CSV (next to the report unless a path is given).
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    pub dump_gram: Option<Option<PathBuf>>,
}

/// Everything that determines a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub seed: u64,
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub dump_gram: Option<PathBuf>,
}

impl JobSpec {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let dump_gram = match args.dump_gram {
            None => None,
            Some(Some(path)) => Some(path),
            Some(None) => match &args.output {
                Some(out) => Some(out.with_extension("gram.csv")),
                None => {
                    return Err(CliError::Input(
                        "--dump-gram without a path needs --output".into(),
                    ))
                }
            },
        };
        Ok(Self {
            command: args.command,
            input: args.input,
            seed: args.seed,
            tol: args.tol,
            output: args.output,
            dump_gram,
        })
    }
}

/// Entry point of the binary: parse arguments, configure threads, run.
pub fn main() -> i32 {
    let args = Args::parse();
    let job = match configure_threads().and_then(|()| JobSpec::from_args(args)) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    run(&job)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Input(format!("{THREADS_ENV}={raw} is not a positive integer"))
        })?;
    // a second initialization (e.g. in tests) keeps the existing pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Run a job, write its report, and return the exit code.
pub fn run(job: &JobSpec) -> i32 {
    let result = execute(job).and_then(|(report, gram)| {
        let text = report.to_json();
        match &job.output {
            Some(path) => report::write_file(path, &text)?,
            None => print!("{text}"),
        }
        if let (Some(path), Some(gram)) = (&job.dump_gram, gram) {
            report::write_file(path, &gram_csv(&gram))?;
        }
        Ok(report.all_pass())
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// The report and, for commands that build one, the Gram matrix.
pub fn execute(job: &JobSpec) -> Result<(Report, Option<CMat>), CliError> {
    let (checks, data, gram) = match job.command {
        Command::VerifyIdentities => {
            let file: SuiteFile = match &job.input {
                Some(path) => read_json(path)?,
                None => parse_json(DEFAULT_SUITE, "bundled default suite")?,
            };
            let (checks, data) = run_suites(&file.suites, file.config, job)?;
            (checks, data, None)
        }
        Command::QuaternionSuite => {
            let config: SuiteConfig = match &job.input {
                Some(path) => read_json(path)?,
                None => SuiteConfig::default(),
            };
            let (checks, data) = run_suites(&[Suite::Quaternion], config, job)?;
            (checks, data, None)
        }
        Command::RandomColligation => {
            let shape: ShapeFile = match &job.input {
                Some(path) => read_json(path)?,
                None => ShapeFile::default(),
            };
            let (checks, data) = random_colligation_job(&shape, job)?;
            (checks, data, None)
        }
        Command::KernelReport => {
            let file: KernelJobFile = read_json(required(job)?)?;
            kernel_report(&file, job)?
        }
        Command::ConstructSchur => {
            let file: ModelFile = read_json(required(job)?)?;
            construct_schur(&file, job)?
        }
        Command::ClassifyRegion => {
            let file: RegionJobFile = read_json(required(job)?)?;
            let (checks, data) = classify_region(&file, job)?;
            (checks, data, None)
        }
    };
    Ok((
        Report::new(job.command, job.seed, job.tol, checks, data),
        gram,
    ))
}

fn required(job: &JobSpec) -> Result<&PathBuf, CliError> {
    job.input
        .as_ref()
        .ok_or_else(|| CliError::Input("this command needs --input".into()))
}

fn run_suites(
    suites: &[Suite],
    mut config: SuiteConfig,
    job: &JobSpec,
) -> Result<(Vec<Check>, serde_json::Value), CliError> {
    config.rank_tol = job.tol;
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(suite.run(job.seed, &config)?);
    }
    Ok((checks, json!({ "suites": suites, "config": config })))
}

fn setting_of(file: &SettingFile) -> Result<Setting, CliError> {
    Ok(match file {
        SettingFile::Disk => Setting::Disk,
        SettingFile::HalfPlane => Setting::HalfPlane,
        SettingFile::Ab(pair) => Setting::Rho(pair.to_pair()?),
    })
}

fn structural_checks(col: &Colligation, tol: f64) -> Vec<Check> {
    let balanced = col.d.ind_minus() == col.c.ind_minus();
    vec![
        Check::below(
            "colligation/coisometry_defect",
            "colligation-coisometry",
            coisometry_defect(&col.block()),
            tol.max(1e-8),
        ),
        Check::at_most(
            "colligation/input_output_index_match",
            "defect-index-balance",
            if balanced { 0.0 } else { 1.0 },
            0.0,
        ),
    ]
}

/// Largest mismatch between the two kernel routes over all pairs of points.
fn kernel_route_gap(col: &Colligation, setting: &Setting, points: &[C64]) -> Result<f64, CliError> {
    let rows: Vec<f64> = points
        .par_iter()
        .map(|&z| {
            points.iter().try_fold(0.0_f64, |acc, &w| {
                let gap = max_diff(
                    &col.kernel_direct(setting, z, w)?,
                    &col.kernel_colligation(setting, z, w)?,
                );
                Ok::<_, Error>(if gap.is_nan() { f64::NAN } else { acc.max(gap) })
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(rows.into_iter().fold(0.0, |a, b| {
        if a.is_nan() || b.is_nan() {
            f64::NAN
        } else {
            a.max(b)
        }
    }))
}

fn random_colligation_job(
    shape: &ShapeFile,
    job: &JobSpec,
) -> Result<(Vec<Check>, serde_json::Value), CliError> {
    let mut rng = SplitMix64::new(job.seed);
    let col = random_colligation(&mut rng, shape.to_shape()?)?;
    let setting = if col.alpha.re > 0.0 {
        Setting::HalfPlane
    } else {
        Setting::Disk
    };
    let points = sample_regular_points(&mut rng, &col, &setting, 8, 20.0)?;
    let mut checks = structural_checks(&col, job.tol);
    checks.push(Check::below(
        "colligation/kernel_routes_agree",
        "kernel-realization-equality",
        kernel_route_gap(&col, &setting, &points)?,
        1e-9,
    ));
    let data = json!({
        "shape": shape,
        "setting": if setting == Setting::Disk { "disk" } else { "half_plane" },
        "colligation": ColligationFile::from_colligation(&col),
    });
    Ok((checks, data))
}

fn kernel_report(
    file: &KernelJobFile,
    job: &JobSpec,
) -> Result<(Vec<Check>, serde_json::Value, Option<CMat>), CliError> {
    let col = file.colligation.to_colligation(job.tol.max(1e-9))?;
    let setting = setting_of(&file.setting)?;
    let points = match &file.points {
        Some(pts) => {
            if let Some(z) = pts.iter().find(|&&z| !setting.contains(z)) {
                return Err(CliError::Input(format!(
                    "point {z} lies outside the domain"
                )));
            }
            pts.clone()
        }
        None => {
            let mut rng = SplitMix64::new(job.seed);
            sample_regular_points(&mut rng, &col, &setting, file.point_count, 20.0)?
        }
    };
    if points.is_empty() || points.len() > MAX_POINTS {
        return Err(CliError::Input(format!(
            "between 1 and {MAX_POINTS} points are required"
        )));
    }

    let mut checks = structural_checks(&col, job.tol);
    checks.push(Check::below(
        "kernel/routes_agree",
        "kernel-realization-equality",
        kernel_route_gap(&col, &setting, &points)?,
        1e-9,
    ));

    let choice = PointChoice::with_basis(&points, col.c.dim())?;
    let gram = gram_matrix(|z, w| col.kernel_direct(&setting, z, w), &choice, &col.c)?;
    let asym = hermitian_defect(&gram);
    checks.push(Check::below(
        "kernel/gram_hermitian",
        "kernel-hermitian",
        asym / max_abs(&gram).max(1.0),
        1e-10,
    ));
    let inertia = inertia_relative(&((&gram + gram.adjoint()) * C64::new(0.5, 0.0)), job.tol)?;
    let kappa = inertia.n_minus;
    checks.push(Check::at_most(
        "kernel/negative_squares_bound",
        "negative-squares-bound",
        kappa as f64,
        col.p.ind_minus() as f64,
    ));
    let values: Vec<input::Rows> = points
        .iter()
        .map(|&z| col.eval(&setting, z).map(|s| input::to_rows(&s)))
        .collect::<Result<_, Error>>()?;
    let data = json!({
        "points": points,
        "values": values,
        "kappa": kappa,
        "state_negative_index": col.p.ind_minus(),
        "gram_inertia": inertia,
    });
    Ok((checks, data, Some(gram)))
}

fn construct_schur(
    file: &ModelFile,
    job: &JobSpec,
) -> Result<(Vec<Check>, serde_json::Value, Option<CMat>), CliError> {
    let setting = setting_of(&file.setting)?;
    let space = match (file.explicit_space()?, &file.blaschke_zeros) {
        (Some(m), _) => m,
        (None, Some(zeros)) => {
            validate_zeros(zeros)?;
            if file.coeff_metric.dim() != 1 || !file.coeff_metric.is_euclidean() {
                return Err(CliError::Input(
                    "Blaschke model spaces are scalar with coeff_metric [1]".into(),
                ));
            }
            blaschke_model_space(zeros, file.alpha)?
        }
        (None, None) => {
            return Err(CliError::Input(
                "give gram/a_alpha/e_alpha or blaschke_zeros".into(),
            ))
        }
    };
    let built = match build(&space, &setting, job.tol) {
        Ok(b) => b,
        Err(Error::InequalityViolated { value }) => {
            let check = Check::below(
                "construction/slack_positive",
                "model-space-inequality-slack",
                -value,
                0.0,
            );
            let data = json!({ "model": file.with_space(&space) });
            return Ok((vec![check], data, Some(space.gram.clone())));
        }
        Err(e) => return Err(e.into()),
    };
    let col = &built.colligation;
    let mut checks = vec![
        Check::at_most(
            "construction/slack_negative_directions",
            "model-space-inequality-slack",
            built.slack_inertia.n_minus as f64,
            0.0,
        ),
        Check::at_most(
            "construction/index_balance",
            "defect-index-balance",
            if built.index_balance.holds() {
                0.0
            } else {
                1.0
            },
            0.0,
        ),
    ];
    checks.extend(structural_checks(col, job.tol));
    if let (Some(zeros), Setting::HalfPlane) = (&file.blaschke_zeros, &setting) {
        let (through, direct) = kernel_match(col, blaschke_kernel(zeros), &round_trip_grid())?;
        checks.push(Check::below(
            "construction/kernel_match_state_space",
            "blaschke-construction-round-trip",
            through,
            1e-8,
        ));
        checks.push(Check::below(
            "construction/kernel_match_realized_function",
            "blaschke-construction-round-trip",
            direct,
            1e-8,
        ));
    }
    let data = json!({
        "k": built.k,
        "slack_inertia": built.slack_inertia,
        "colligation": ColligationFile::from_colligation(col),
        "model": file.with_space(&space),
    });
    Ok((checks, data, Some(space.gram.clone())))
}

fn build(space: &FiniteModelSpace, setting: &Setting, tol: f64) -> Result<Construction, Error> {
    match setting {
        Setting::HalfPlane => construct_from_space(space, tol),
        Setting::Disk => construct_from_space_unified(space, &AbPair::disk(), tol),
        Setting::Rho(ab) => construct_from_space_unified(space, ab, tol),
    }
}

fn validate_zeros(zeros: &[C64]) -> Result<(), CliError> {
    if zeros.is_empty() || zeros.len() > MAX_POINTS {
        return Err(CliError::Input(format!(
            "between 1 and {MAX_POINTS} zeros are required"
        )));
    }
    for (i, z) in zeros.iter().enumerate() {
        if !(z.re > 0.0) {
            return Err(CliError::Input(format!(
                "zero {z} is not in the right half-plane"
            )));
        }
        if zeros[..i].iter().any(|w| (z - w).norm() < 1e-8) {
            return Err(CliError::Input(format!("zero {z} is repeated")));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct Classified {
    point: C64,
    zone: Zone,
    sigma: Option<C64>,
}

fn classify_region(
    file: &RegionJobFile,
    job: &JobSpec,
) -> Result<(Vec<Check>, serde_json::Value), CliError> {
    let ab = file.pair().to_pair()?;
    let config = SuiteConfig {
        rank_tol: job.tol,
        ..SuiteConfig::default()
    };
    let checks = ab_pair_checks("input", &ab, job.seed, &config)?;
    let classify = |z: C64| Classified {
        point: z,
        zone: ab.classify(z),
        sigma: ab.sigma(z).ok(),
    };
    let points: Vec<Classified> = file.points.iter().flatten().map(|&z| classify(z)).collect();
    let grid = ab.domain.grid();
    let count = |zone| grid.iter().filter(|&&z| ab.classify(z) == zone).count();
    let data = json!({
        "points": points,
        "grid": {
            "omega_plus": count(Zone::OmegaPlus),
            "omega_minus": count(Zone::OmegaMinus),
            "omega_zero": count(Zone::OmegaZero),
        },
        "intrinsic": ab.is_intrinsic(),
    });
    Ok((checks, data))
}
