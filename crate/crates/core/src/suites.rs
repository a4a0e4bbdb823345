//! Seeded batteries of identity checks.
//!
//! Every suite draws from its own [`SplitMix64`] stream, one stream per draw,
//! so results do not depend on thread count or on which other suites run.
//! Draws run in parallel; checks come back in a fixed order.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::kernel_spaces::{
    check_identity, resolvent_identity_residual, Identity, PointChoice, RationalSection, Setting,
};
use crate::linalg::{c, max_diff, re, solve_right, CMat, CVec, C64};
use crate::poly::{Poly, VecPoly};
use crate::qschur::{
    check_halfspace_resolvent_identity, check_halfspace_resolvent_identity_spans, k_forms,
    k_halfspace, kernel_proof_identity, resolvent_sum_residual_q, EigenConstant, HalfSpacePoint,
    QColligation, QSectionSpan,
};
use crate::quaternion::{
    star_eval, star_inverse_resolvent, QMatrix, Quaternion, SlicePowerSeries, StarRule,
};
use crate::rng::SplitMix64;
use crate::schur::{
    construct_from_space, random_colligation, sample_regular_points, Colligation, FiniteModelSpace,
    RandomShape,
};
use crate::unified::{j0_unitary, resolvent_sum_residual, AbPair, Rational, Region, Zone};

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Stable identifier of the identity or property being checked.
    pub paper_anchor: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `residual < threshold` (a NaN residual fails).
    pub fn below(name: impl Into<String>, anchor: &str, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            paper_anchor: anchor.into(),
            residual,
            threshold,
            pass: residual < threshold,
        }
    }

    /// Passes when `value <= limit`; used for counts.
    pub fn at_most(name: impl Into<String>, anchor: &str, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            paper_anchor: anchor.into(),
            residual: value,
            threshold: limit,
            pass: value <= limit,
        }
    }
}

/// The batteries, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Resolvent,
    Hardy,
    KernelEquality,
    Construction,
    NegativeSquares,
    Quaternion,
    Unified,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Resolvent,
        Suite::Hardy,
        Suite::KernelEquality,
        Suite::Construction,
        Suite::NegativeSquares,
        Suite::Quaternion,
        Suite::Unified,
    ];

    pub fn run(self, seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
        match self {
            Suite::Resolvent => resolvent_suite(seed, cfg),
            Suite::Hardy => hardy_suite(seed, cfg),
            Suite::KernelEquality => kernel_equality_suite(seed, cfg),
            Suite::Construction => construction_suite(seed, cfg),
            Suite::NegativeSquares => negative_squares_suite(seed, cfg),
            Suite::Quaternion => quaternion_suite(seed, cfg),
            Suite::Unified => unified_suite(seed, cfg),
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

/// Draw counts. The defaults are the full acceptance sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Draws per setting for the resolvent identity and the quaternionic identities.
    pub draws: usize,
    /// Draws per identity and setting for the Hardy-space identities.
    pub hardy_draws: usize,
    pub colligations: usize,
    pub point_pairs: usize,
    /// Largest Blaschke product degree for the construction round trip.
    pub max_blaschke_degree: usize,
    pub negative_squares_draws: usize,
    /// Minimum number of draws where `kappa = ind_-(P)` must be attained.
    pub attainment_required: usize,
    pub j0_transforms: usize,
    /// Relative eigenvalue cut for inertia and negative-square counts.
    pub rank_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            draws: 100,
            hardy_draws: 50,
            colligations: 20,
            point_pairs: 20,
            max_blaschke_degree: 4,
            negative_squares_draws: 100,
            attainment_required: 95,
            j0_transforms: 20,
            rank_tol: 1e-9,
        }
    }
}

fn draw_rng(seed: u64, suite: Suite, stream: u64, i: usize) -> SplitMix64 {
    let mut mix = SplitMix64::new(seed ^ (suite.tag() << 56) ^ (stream << 40) ^ i as u64);
    SplitMix64::new(mix.next_u64())
}

/// `max` that keeps NaN.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn worst_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, worst)
}

fn par_worst(n: usize, f: impl Fn(usize) -> Result<f64> + Sync + Send) -> Result<f64> {
    let v: Vec<f64> = (0..n).into_par_iter().map(f).collect::<Result<_>>()?;
    Ok(worst_of(v))
}

fn cvec(rng: &mut SplitMix64, dim: usize) -> CVec {
    CVec::from_fn(dim, |_, _| rng.complex_normal())
}

fn disk_point(rng: &mut SplitMix64) -> C64 {
    rng.complex_in_disk(0.9)
}

fn half_plane_point(rng: &mut SplitMix64) -> C64 {
    rng.complex_in_rect((0.1, 3.0), (-2.0, 2.0))
}

fn setting_point(rng: &mut SplitMix64, setting: &Setting) -> C64 {
    match setting {
        Setting::Disk => disk_point(rng),
        Setting::HalfPlane => half_plane_point(rng),
        Setting::Rho(ab) => omega_plus_point(rng, ab),
    }
}

/// A point of `Omega_+` inside the declared domain, kept away from the boundary set.
pub fn omega_plus_point(rng: &mut SplitMix64, ab: &AbPair) -> C64 {
    let grid = ab.domain.grid();
    loop {
        let z = grid[rng.range(0, grid.len() - 1)]
            + c(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02));
        let (a2, b2) = (ab.a.eval(z).norm_sqr(), ab.b.eval(z).norm_sqr());
        if ab.domain.contains(z) && a2 - b2 > 0.1 * a2.max(1.0) {
            return z;
        }
    }
}

/// A random degree `<= 2` pair on `[-3, 3]^2` that meets both `Omega_+` and `Omega_-`.
pub fn random_ab_pair(rng: &mut SplitMix64, intrinsic: bool) -> AbPair {
    loop {
        let mut draw = |scale: f64| {
            let z = rng.complex_normal() * scale;
            if intrinsic {
                re(z.re)
            } else {
                z
            }
        };
        let a = Poly::new(vec![re(2.0) + draw(0.3), draw(0.3)]);
        let b = Poly::new(vec![draw(0.3), re(1.0) + draw(0.3), draw(0.2)]);
        if let Ok(p) = AbPair::new(
            a,
            b,
            Region::Rect {
                re: (-3.0, 3.0),
                im: (-3.0, 3.0),
            },
        ) {
            return p;
        }
    }
}

fn random_span(
    rng: &mut SplitMix64,
    setting: &Setting,
    terms: usize,
    dim: usize,
) -> Result<RationalSection> {
    let terms = (0..terms)
        .map(|_| (setting_point(rng, setting), cvec(rng, dim)))
        .collect();
    RationalSection::from_terms(setting.clone(), dim, terms)
}

// ---------------------------------------------------------------------------

fn resolvent_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let settings = [("disk", Setting::Disk), ("half_plane", Setting::HalfPlane)];
    settings
        .iter()
        .enumerate()
        .map(|(s, (label, setting))| {
            let r = par_worst(cfg.draws, |i| {
                let mut rng = draw_rng(seed, Suite::Resolvent, s as u64, i);
                let n = rng.range(1, 6);
                let dim = rng.range(1, 2);
                let coeffs = (0..=rng.range(0, 3)).map(|_| cvec(&mut rng, dim)).collect();
                let f = random_span(&mut rng, setting, n, dim)?.add(
                    &RationalSection::polynomial(setting.clone(), VecPoly::new(dim, coeffs)),
                )?;
                let alpha = setting_point(&mut rng, setting);
                let beta = setting_point(&mut rng, setting);
                let pts: Vec<C64> = (0..10).map(|_| setting_point(&mut rng, setting)).collect();
                resolvent_identity_residual(&f, alpha, beta, &pts)
            })?;
            Ok(Check::below(
                format!("resolvent_identity/{label}"),
                "resolvent-identity",
                r,
                1e-10,
            ))
        })
        .collect()
}

fn hardy_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases = [
        (
            "hardy_disk",
            Identity::DiskResolventForm,
            Setting::Disk,
            "hardy-disk-inner-product-identity",
        ),
        (
            "hardy_half_plane",
            Identity::HalfPlaneResolventForm,
            Setting::HalfPlane,
            "hardy-half-plane-inner-product-identity",
        ),
    ];
    for (s, (label, identity, setting, anchor)) in cases.iter().enumerate() {
        let r = par_worst(cfg.hardy_draws, |i| {
            let mut rng = draw_rng(seed, Suite::Hardy, s as u64, i);
            identity_draw(&mut rng, *identity, setting)
        })?;
        out.push(Check::below(*label, anchor, r, 1e-10));
    }

    let mut pair_rng = draw_rng(seed, Suite::Hardy, 99, 0);
    let mut pairs = vec![
        ("disk".to_string(), AbPair::disk()),
        ("half_plane".to_string(), AbPair::half_plane()),
    ];
    for k in 0..3 {
        pairs.push((format!("random_{k}"), random_ab_pair(&mut pair_rng, false)));
    }
    for (s, (label, ab)) in pairs.iter().enumerate() {
        let setting = Setting::Rho(ab.clone());
        let r = par_worst(cfg.hardy_draws, |i| {
            let mut rng = draw_rng(seed, Suite::Hardy, 10 + s as u64, i);
            identity_draw(&mut rng, Identity::AbResolventAdjoint, &setting)
        })?;
        out.push(Check::below(
            format!("ab_adjoint_identity/{label}"),
            "ab-resolvent-adjoint-identity",
            r,
            1e-10,
        ));
    }
    Ok(out)
}

fn identity_draw(rng: &mut SplitMix64, identity: Identity, setting: &Setting) -> Result<f64> {
    let dim = rng.range(1, 2);
    let metric = if dim == 2 && rng.next_f64() < 0.5 {
        Some(Metric::signature(&[1, -1])?)
    } else {
        None
    };
    let (n, m) = (rng.range(1, 6), rng.range(1, 6));
    let f = random_span(rng, setting, n, dim)?;
    let g = random_span(rng, setting, m, dim)?;
    let alpha = setting_point(rng, setting);
    let beta = setting_point(rng, setting);
    check_identity(identity, &f, &g, alpha, beta, metric.as_ref())
}

// ---------------------------------------------------------------------------

/// Random shape for the kernel-equality and negative-squares batteries.
fn random_shape(rng: &mut SplitMix64, max_dim: usize, scalar: bool) -> RandomShape {
    let np = rng.range(1, max_dim);
    let neg = rng.range(0, np.min(2));
    let mut shape = RandomShape::scalar(np, neg);
    if !scalar {
        let nc = rng.range(1, 2);
        shape.output = (nc, rng.range(0, nc - 1));
        shape.extra_input = rng.range(0, 1);
    }
    shape
}

/// `count` points where the colligation's point evaluation stays moderate.
fn regular_points(
    rng: &mut SplitMix64,
    col: &Colligation,
    setting: &Setting,
    count: usize,
) -> Result<Vec<C64>> {
    sample_regular_points(rng, col, setting, count, 20.0)
}

fn kernel_equality_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut pair_rng = draw_rng(seed, Suite::KernelEquality, 99, 0);
    let random_pair = random_ab_pair(&mut pair_rng, false);
    let settings = [
        ("disk", Setting::Disk),
        ("half_plane", Setting::HalfPlane),
        ("unified_half_plane", Setting::Rho(AbPair::half_plane())),
        ("unified_random", Setting::Rho(random_pair)),
    ];
    settings
        .iter()
        .enumerate()
        .map(|(s, (label, setting))| {
            let r = par_worst(cfg.colligations, |i| {
                let mut rng = draw_rng(seed, Suite::KernelEquality, s as u64, i);
                let mut shape = random_shape(&mut rng, 8, false);
                shape.alpha = match setting {
                    Setting::Disk => re(0.0),
                    Setting::HalfPlane => rng.complex_in_rect((0.3, 2.0), (-1.0, 1.0)),
                    Setting::Rho(ab) => omega_plus_point(&mut rng, ab),
                };
                let col = random_colligation(&mut rng, shape)?;
                let pts = regular_points(&mut rng, &col, setting, 2 * cfg.point_pairs)?;
                let mut w = 0.0;
                for pair in pts.chunks(2) {
                    let direct = col.kernel_direct(setting, pair[0], pair[1])?;
                    let through = col.kernel_colligation(setting, pair[0], pair[1])?;
                    w = worst(w, max_diff(&direct, &through));
                }
                Ok(w)
            })?;
            Ok(Check::below(
                format!("kernel_equality/{label}"),
                "kernel-realization-equality",
                r,
                1e-9,
            ))
        })
        .collect()
}

// ---------------------------------------------------------------------------

/// Scalar half-plane Blaschke product with the given zeros.
pub fn blaschke(zeros: &[C64], z: C64) -> C64 {
    zeros
        .iter()
        .fold(re(1.0), |acc, &a| acc * (z - a) / (z + a.conj()))
}

/// `K(z, w) = (1 - b(z) conj(b(w))) / (2 pi (z + conj w))`.
pub fn blaschke_kernel(zeros: &[C64]) -> impl Fn(C64, C64) -> Result<CMat> + Sync + '_ {
    move |z: C64, w: C64| {
        let den = (z + w.conj()) * (2.0 * PI);
        if den.norm() == 0.0 {
            return Err(Error::DomainViolation(format!(
                "kernel denominator vanishes at ({z}, {w})"
            )));
        }
        Ok(CMat::from_element(
            1,
            1,
            (re(1.0) - blaschke(zeros, z) * blaschke(zeros, w).conj()) / den,
        ))
    }
}

/// The model space spanned by the kernel sections at the zeros, with base point `alpha`.
pub fn blaschke_model_space(zeros: &[C64], alpha: C64) -> Result<FiniteModelSpace> {
    let choice = PointChoice::with_basis(zeros, 1)?;
    FiniteModelSpace::from_kernel_sections(
        blaschke_kernel(zeros),
        &Metric::euclidean(1),
        alpha,
        &choice,
        None,
    )
}

/// The evaluation grid of the construction round trip: 10 x 10 points of `[0.2, 2] x [-1.5, 1.5]`.
pub fn round_trip_grid() -> Vec<C64> {
    let mut pts = Vec::with_capacity(100);
    for i in 0..10 {
        for j in 0..10 {
            pts.push(c(0.2 + 1.8 * i as f64 / 9.0, -1.5 + 3.0 * j as f64 / 9.0));
        }
    }
    pts
}

/// Largest kernel mismatch between a constructed colligation and a reference kernel on the grid.
///
/// Returns `(through the state space, through the realized function)`.
pub fn kernel_match<K>(col: &Colligation, reference: K, grid: &[C64]) -> Result<(f64, f64)>
where
    K: Fn(C64, C64) -> Result<CMat> + Sync,
{
    let setting = Setting::HalfPlane;
    let evals: Vec<CMat> = grid
        .par_iter()
        .map(|&z| col.point_evaluation(&setting, z))
        .collect::<Result<_>>()?;
    let values: Vec<CMat> = grid
        .par_iter()
        .map(|&z| col.eval_halfplane(z))
        .collect::<Result<_>>()?;
    let rows: Vec<(f64, f64)> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut w = (0.0, 0.0);
            for j in 0..grid.len() {
                let want = reference(grid[i], grid[j])?;
                let through = &evals[i] * col.p.apply_left(&col.c.apply_right(&evals[j].adjoint()));
                let n = col.c.dim();
                let direct = (CMat::identity(n, n) - &values[i] * col.adjoint_value(&values[j]))
                    / setting.kernel_denominator(grid[i], grid[j]);
                w = (
                    worst(w.0, max_diff(&through, &want)),
                    worst(w.1, max_diff(&direct, &want)),
                );
            }
            Ok(w)
        })
        .collect::<Result<_>>()?;
    Ok(rows
        .into_iter()
        .fold((0.0, 0.0), |a, b| (worst(a.0, b.0), worst(a.1, b.1))))
}

fn random_zeros(rng: &mut SplitMix64, n: usize) -> Vec<C64> {
    let mut zeros: Vec<C64> = Vec::with_capacity(n);
    while zeros.len() < n {
        let z = rng.complex_in_rect((0.3, 2.0), (-1.5, 1.5));
        if zeros.iter().all(|w| (z - w).norm() > 0.3) {
            zeros.push(z);
        }
    }
    zeros
}

fn construction_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let grid = round_trip_grid();
    let mut out = Vec::new();
    for n in 1..=cfg.max_blaschke_degree {
        let mut rng = draw_rng(seed, Suite::Construction, 0, n);
        let zeros = random_zeros(&mut rng, n);
        let m = blaschke_model_space(&zeros, re(1.0))?;
        let built = construct_from_space(&m, cfg.rank_tol)?;
        let (through, direct) = kernel_match(&built.colligation, blaschke_kernel(&zeros), &grid)?;
        out.push(Check::below(
            format!("blaschke_round_trip/n{n}/state_space"),
            "blaschke-construction-round-trip",
            through,
            1e-8,
        ));
        out.push(Check::below(
            format!("blaschke_round_trip/n{n}/realized_function"),
            "blaschke-construction-round-trip",
            direct,
            1e-8,
        ));
        let nonzero = built.slack_inertia.n_plus + built.slack_inertia.n_minus;
        out.push(Check::at_most(
            format!("blaschke_round_trip/n{n}/slack_nonzero_inertia"),
            "model-space-inequality-slack",
            nonzero as f64,
            0.0,
        ));
        out.push(Check::at_most(
            format!("blaschke_round_trip/n{n}/index_balance"),
            "defect-index-balance",
            if built.index_balance.holds() {
                0.0
            } else {
                1.0
            },
            0.0,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

/// Outcome of one negative-squares draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KappaDraw {
    pub ind_minus: usize,
    /// `kappa` on the first `dim P`, `dim P + 2` and `dim P + 4` points.
    pub kappas: [usize; 3],
}

impl KappaDraw {
    pub fn bounded(&self) -> bool {
        self.kappas.iter().all(|&k| k <= self.ind_minus)
    }

    /// Attained at `N = dim P` and unchanged as points are added.
    pub fn attained(&self) -> bool {
        self.kappas.iter().all(|&k| k == self.ind_minus)
    }
}

pub fn kappa_draw(seed: u64, i: usize, rank_tol: f64) -> Result<KappaDraw> {
    let mut rng = draw_rng(seed, Suite::NegativeSquares, 0, i);
    let setting = if i.is_multiple_of(2) {
        Setting::Disk
    } else {
        Setting::HalfPlane
    };
    let mut shape = random_shape(&mut rng, 8, true);
    shape.alpha = re(1.0);
    let col = random_colligation(&mut rng, shape)?;
    let np = shape.state.0;
    let pts = regular_points(&mut rng, &col, &setting, np + 4)?;
    let mut kappas = [0; 3];
    for (k, extra) in [0, 2, 4].into_iter().enumerate() {
        let choice = PointChoice::with_basis(&pts[..np + extra], col.c.dim())?;
        kappas[k] = col.negative_squares(&setting, &choice, rank_tol)?;
    }
    Ok(KappaDraw {
        ind_minus: shape.state.1,
        kappas,
    })
}

fn negative_squares_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let draws: Vec<KappaDraw> = (0..cfg.negative_squares_draws)
        .into_par_iter()
        .map(|i| kappa_draw(seed, i, cfg.rank_tol))
        .collect::<Result<_>>()?;
    let unbounded = draws.iter().filter(|d| !d.bounded()).count();
    let missed = draws.iter().filter(|d| !d.attained()).count();
    let allowed = cfg
        .negative_squares_draws
        .saturating_sub(cfg.attainment_required);
    Ok(vec![
        Check::at_most(
            "negative_squares/bound_violations",
            "negative-squares-bound",
            unbounded as f64,
            0.0,
        ),
        Check::at_most(
            "negative_squares/attainment_misses",
            "negative-squares-attainment",
            missed as f64,
            allowed as f64,
        ),
    ])
}

// ---------------------------------------------------------------------------

fn half_space_point(rng: &mut SplitMix64) -> Quaternion {
    let q = Quaternion::random(rng);
    Quaternion::new(rng.uniform(0.1, 2.0), q.x1, q.x2, q.x3)
}

/// Point of norm `< r` about a real center.
fn ball_point(rng: &mut SplitMix64, center: f64, r: f64) -> Quaternion {
    let h = Quaternion::random(rng);
    Quaternion::real(center) + h * (r * rng.next_f64() / h.norm())
}

fn quaternion_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let stream = |s: u64| move |i: usize| draw_rng(seed, Suite::Quaternion, s, i);
    let n = cfg.draws;

    let forms = par_worst(n, |i| {
        let mut rng = stream(0)(i);
        Ok(k_forms(half_space_point(&mut rng), half_space_point(&mut rng))?.discrepancy())
    })?;
    let inner = par_worst(n, |i| {
        let mut rng = stream(1)(i);
        let (a, b) = (rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0));
        let mu = HalfSpacePoint::new(half_space_point(&mut rng))?;
        let nu = HalfSpacePoint::new(half_space_point(&mut rng))?;
        let single = check_halfspace_resolvent_identity(a, b, mu, nu)?;
        let span = |rng: &mut SplitMix64| QSectionSpan {
            terms: (0..3)
                .map(|_| (half_space_point(rng), Quaternion::random(rng)))
                .collect(),
        };
        let (f, g) = (span(&mut rng), span(&mut rng));
        Ok(worst(
            single,
            check_halfspace_resolvent_identity_spans(a, b, &f, &g, EigenConstant::AlphaPlusMuBar)?,
        ))
    })?;
    let proof = par_worst(n, |i| {
        let mut rng = stream(2)(i);
        kernel_proof_identity(half_space_point(&mut rng), half_space_point(&mut rng))
    })?;
    let star = par_worst(n.min(50), |i| {
        let mut rng = stream(3)(i);
        let dim = rng.range(1, 4);
        let a = QMatrix::random(&mut rng, dim, dim);
        let a = a.scale(0.5 / a.embed().norm());
        let rows = rng.range(1, 3);
        let g = QMatrix::random(&mut rng, rows, dim);
        let p = ball_point(&mut rng, 0.0, 1.0);
        let series = SlicePowerSeries::constant(0.0, g.clone())
            .star_product(&SlicePowerSeries::geometric(0.0, &a, 32, 2.0)?)?;
        Ok(star_inverse_resolvent(&a, &g, p)?.max_diff(&series.eval(p)?))
    })?;
    let real_axis = par_worst(n.min(50), |i| {
        let mut rng = stream(4)(i);
        real_axis_draw(&mut rng)
    })?;
    Ok(vec![
        Check::below(
            "quaternion/kernel_forms_agree",
            "half-space-kernel-two-forms",
            forms,
            1e-12,
        ),
        Check::below(
            "quaternion/resolvent_inner_product_identity",
            "half-space-resolvent-identity",
            inner,
            1e-10,
        ),
        Check::below(
            "quaternion/kernel_proof_identity",
            "half-space-kernel-proof-identity",
            proof,
            1e-12,
        ),
        Check::below(
            "quaternion/star_inverse_vs_series",
            "star-inverse-resolvent",
            star,
            1e-8,
        ),
        Check::below(
            "quaternion/real_axis_reduction",
            "real-axis-reduction",
            real_axis,
            1e-10,
        ),
    ])
}

/// Every quaternionic route restricted to real points (or to `C_i` with complex data)
/// against its complex counterpart.
fn real_axis_draw(rng: &mut SplitMix64) -> Result<f64> {
    let mut w = 0.0;
    let (z1, z2) = (rng.complex_normal(), rng.complex_normal());
    // arithmetic on C_i
    let prod = Quaternion::from_complex(z1) * Quaternion::from_complex(z2);
    w = worst(w, (prod - Quaternion::from_complex(z1 * z2)).norm());
    let inv = Quaternion::from_complex(z1).inv()?;
    w = worst(w, (inv - Quaternion::from_complex(z1.inv())).norm());

    // matrix algebra
    let dim = rng.range(1, 4);
    let a = rng.complex_matrix(dim, dim) * re(0.4 / dim as f64);
    let g = rng.complex_matrix(2, dim);
    let (qa, qg) = (QMatrix::from_complex(&a), QMatrix::from_complex(&g));
    w = worst(w, (&qg * &qa).max_diff(&QMatrix::from_complex(&(&g * &a))));

    // star-inverse resolvent on C_i with complex data is G (I - zA)^{-1}
    let z = rng.complex_in_disk(0.9);
    let id = CMat::identity(dim, dim);
    let want = solve_right(&g, &(&id - &a * z), || {
        Error::SingularResolvent(format!("{z}"))
    })?;
    w = worst(
        w,
        star_inverse_resolvent(&qa, &qg, Quaternion::from_complex(z))?
            .max_diff(&QMatrix::from_complex(&want)),
    );

    // star product of complex series on C_i is the pointwise product
    let fc: Vec<C64> = (0..4).map(|_| rng.complex_normal()).collect();
    let gc: Vec<C64> = (0..3).map(|_| rng.complex_normal()).collect();
    let lift = |cs: &[C64]| {
        SlicePowerSeries::scalar(
            0.0,
            &cs.iter()
                .map(|&x| Quaternion::from_complex(x))
                .collect::<Vec<_>>(),
            2.0,
        )
    };
    let (fs, gs) = (lift(&fc)?, lift(&gc)?);
    let poly = |cs: &[C64]| cs.iter().rev().fold(re(0.0), |acc, &x| acc * z + x);
    let prod = star_eval(
        &fs,
        &gs,
        Quaternion::from_complex(z),
        StarRule::SliceComponents,
    )?;
    w = worst(
        w,
        (prod[(0, 0)] - Quaternion::from_complex(poly(&fc) * poly(&gc))).norm(),
    );

    // half-space kernel on real points
    let (t, s) = (rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0));
    let k = k_halfspace(
        HalfSpacePoint::new(Quaternion::real(t))?,
        HalfSpacePoint::new(Quaternion::real(s))?,
    )?;
    w = worst(w, (k - Quaternion::real(1.0 / (t + s))).norm());

    // colligation: value, kernel and negative squares
    let mut shape = random_shape(rng, 4, false);
    shape.alpha = re(rng.uniform(0.5, 1.5));
    let col = random_colligation(rng, shape)?;
    let q = QColligation::from_complex(&col, 1e-9)?;
    let ts: Vec<f64> = (0..6).map(|_| rng.uniform(0.2, 3.0)).collect();
    for pair in ts.chunks(2) {
        let (t, s) = (pair[0], pair[1]);
        w = worst(
            w,
            q.eval_q(Quaternion::real(t))?
                .max_diff(&QMatrix::from_complex(&col.eval_halfplane(re(t))?)),
        );
        let kc = col.kernel_direct(&Setting::HalfPlane, re(t), re(s))?;
        w = worst(
            w,
            q.kernel_q(Quaternion::real(t), Quaternion::real(s))?
                .max_diff(&QMatrix::from_complex(&kc)),
        );
    }
    let qpts: Vec<Quaternion> = ts.iter().map(|&t| Quaternion::real(t)).collect();
    let choice =
        PointChoice::with_basis(&ts.iter().map(|&t| re(t)).collect::<Vec<_>>(), col.c.dim())?;
    let kappa_c = col.negative_squares(&Setting::HalfPlane, &choice, 1e-9)?;
    let kappa_q = q.negative_squares(&qpts, 1e-9)?.kappa;
    w = worst(w, (kappa_c as f64 - kappa_q as f64).abs());
    Ok(w)
}

// ---------------------------------------------------------------------------

fn unified_suite(seed: u64, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut pair_rng = draw_rng(seed, Suite::Unified, 99, 0);
    let mut pairs = vec![
        ("disk".to_string(), AbPair::disk()),
        ("half_plane".to_string(), AbPair::half_plane()),
    ];
    for k in 0..3 {
        pairs.push((format!("random_{k}"), random_ab_pair(&mut pair_rng, k == 2)));
    }
    let mut out = Vec::new();
    for (s, (label, ab)) in pairs.iter().enumerate() {
        out.extend(ab_pair_checks(
            label,
            ab,
            seed ^ ((s as u64 + 1) << 32),
            cfg,
        )?);
    }
    Ok(out)
}

/// Invariance of `rho` and of the zone split under random `J0`-unitary
/// re-representations, plus the resolvent-sum identity (and its quaternionic
/// form when the pair is intrinsic).
pub fn ab_pair_checks(
    label: &str,
    ab: &AbPair,
    seed: u64,
    cfg: &SuiteConfig,
) -> Result<Vec<Check>> {
    let grid = ab.domain.grid();
    let zones: Vec<Zone> = grid.iter().map(|&z| ab.classify(z)).collect();
    let rows: Vec<(f64, usize)> = (0..cfg.j0_transforms)
        .into_par_iter()
        .map(|i| {
            let mut rng = draw_rng(seed, Suite::Unified, 0, i);
            let u = j0_unitary(
                rng.uniform(-1.0, 1.0),
                [0.0; 4].map(|_| rng.uniform(0.0, std::f64::consts::TAU)),
            );
            let other = ab.transform(&u)?;
            let mut dr = 0.0;
            for _ in 0..50 {
                let (z, w) = (
                    grid[rng.range(0, grid.len() - 1)],
                    grid[rng.range(0, grid.len() - 1)],
                );
                dr = worst(
                    dr,
                    (ab.rho(z, w) - other.rho(z, w)).norm() / ab.rho(z, w).norm().max(1.0),
                );
            }
            let flips = grid
                .iter()
                .zip(&zones)
                .filter(|(&z, &zone)| other.classify(z) != zone)
                .count();
            Ok((dr, flips))
        })
        .collect::<Result<_>>()?;
    let rho = worst_of(rows.iter().map(|r| r.0));
    let flips: usize = rows.iter().map(|r| r.1).sum();
    let mut out = vec![
        Check::below(
            format!("j0_invariance/{label}/rho"),
            "ab-pair-j0-invariance",
            rho,
            1e-10,
        ),
        Check::at_most(
            format!("j0_invariance/{label}/zone_changes"),
            "ab-pair-j0-invariance",
            flips as f64,
            0.0,
        ),
    ];

    let r = par_worst(cfg.hardy_draws, |i| {
        let mut rng = draw_rng(seed, Suite::Unified, 1, i);
        let num = Poly::new(
            (0..=rng.range(0, 3))
                .map(|_| rng.complex_normal())
                .collect(),
        );
        let den = Poly::new(vec![re(4.0), rng.complex_normal()]);
        let f = Rational::new(num, den)?;
        let alpha = omega_plus_point(&mut rng, ab);
        let pts: Vec<C64> = (0..20).map(|_| omega_plus_point(&mut rng, ab)).collect();
        resolvent_sum_residual(ab, &f, alpha, &pts)
    })?;
    out.push(Check::below(
        format!("ab_resolvent_sum/{label}"),
        "ab-resolvent-sum-identity",
        r,
        1e-10,
    ));

    if ab.is_intrinsic() {
        let r = par_worst(cfg.hardy_draws, |i| {
            let mut rng = draw_rng(seed, Suite::Unified, 2, i);
            // a real base point of Omega_+
            let alpha = loop {
                let t = omega_plus_point(&mut rng, ab).re;
                let (a, b) = (ab.a.eval(re(t)).norm(), ab.b.eval(re(t)).norm());
                if ab.domain.contains(re(t)) && a - b > 1e-3 * a.max(1.0) {
                    break t;
                }
            };
            let coeffs: Vec<Quaternion> = (0..5).map(|_| Quaternion::random(&mut rng)).collect();
            let f = SlicePowerSeries::scalar(alpha, &coeffs, 1.0)?;
            let pts: Vec<Quaternion> = (0..20).map(|_| ball_point(&mut rng, alpha, 0.6)).collect();
            resolvent_sum_residual_q(ab, |p| Ok(f.eval(p)?[(0, 0)]), alpha, &pts)
        })?;
        out.push(Check::below(
            format!("ab_resolvent_sum_quaternionic/{label}"),
            "ab-resolvent-sum-identity-quaternionic",
            r,
            1e-10,
        ));
    }
    Ok(out)
}
