//! Construction of a coisometric realization in the `(a, b)` setting.

use super::realization::{t_from_rab, StateResolvents};
use super::{AbPair, Zone};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMat, C64};
use crate::schur::{check_slack, realize_from_contraction, Construction, FiniteModelSpace};

/// Build the colligation from a model space whose `a_alpha` represents `R(a, b, alpha)`.
///
/// `T = (rho(alpha,alpha) R(a,b) - conj(b(alpha)) I) / conj(a(alpha))`, `G = sqrt(rho(alpha,alpha)) E`;
/// the slack `P - T^H P T - G^H J G` must be positive semidefinite.
pub fn construct_from_space_unified(
    m: &FiniteModelSpace,
    ab: &AbPair,
    tol: f64,
) -> Result<Construction> {
    let alpha = m.alpha;
    if ab.classify(alpha) != Zone::OmegaPlus {
        return Err(Error::DomainViolation(format!(
            "base point {alpha} is not in Omega_+"
        )));
    }
    let rho = ab.rho(alpha, alpha).re;
    let p = &m.gram;
    let t = t_from_rab(&m.a_alpha, ab, alpha)?;
    let g = &m.e_alpha * C64::new(rho.sqrt(), 0.0);
    let tpt = t.adjoint() * p * &t;
    let gjg = g.adjoint() * m.coeff_metric.apply_left(&g);
    let scale = max_abs(p).max(max_abs(&tpt)).max(max_abs(&gjg));
    let slack = p - tpt - gjg;
    let slack = (&slack + slack.adjoint()) * C64::new(0.5, 0.0);
    let slack_inertia = check_slack(&slack, scale, tol)?;
    realize_from_contraction(m, t, g, rho, slack, slack_inertia, tol)
}

/// Matrices of `R(a,b,alpha)` and `R(b,a,alpha)` on the span of kernel sections
/// `k(., mu_j) = 1/rho(., mu_j)`; both are diagonal in that basis.
pub fn section_resolvents(ab: &AbPair, alpha: C64, mus: &[C64]) -> Result<StateResolvents> {
    let n = mus.len();
    let mut rab = CMat::zeros(n, n);
    let mut rba = CMat::zeros(n, n);
    for (j, &mu) in mus.iter().enumerate() {
        let r = ab.rho(alpha, mu);
        if r.norm() <= 1e-14 {
            return Err(Error::ZeroDenominator(format!("rho({alpha}, {mu}) = 0")));
        }
        rab[(j, j)] = ab.b.eval(mu).conj() / r;
        rba[(j, j)] = -ab.a.eval(mu).conj() / r;
    }
    Ok(StateResolvents { rab, rba })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite::Metric;
    use crate::kernel_spaces::{PointChoice, Setting};
    use crate::linalg::{c, max_diff, re};
    use crate::rng::SplitMix64;
    use crate::unified::{inequality_forms, step_two_residuals};

    fn blaschke(zeros: &[C64], z: C64) -> C64 {
        zeros
            .iter()
            .fold(re(1.0), |acc, &a| acc * (z - a) / (z + a.conj()))
    }

    #[test]
    fn half_plane_pair_round_trip() {
        let ab = AbPair::half_plane();
        let zeros = [c(0.5, 0.3), c(1.2, -0.6)];
        let kernel = |z: C64, w: C64| {
            Ok(CMat::from_element(
                1,
                1,
                (re(1.0) - blaschke(&zeros, z) * blaschke(&zeros, w).conj()) / ab.rho(z, w),
            ))
        };
        let choice = PointChoice::with_basis(&zeros, 1).unwrap();
        let alpha = c(0.9, 0.2);
        let m = FiniteModelSpace::from_kernel_sections(
            kernel,
            &Metric::euclidean(1),
            alpha,
            &choice,
            Some(&ab),
        )
        .unwrap();
        let out = construct_from_space_unified(&m, &ab, 1e-9).unwrap();
        assert_eq!(out.slack_inertia.n_minus, 0);
        assert_eq!(out.slack_inertia.n_plus, 0);
        let setting = Setting::Rho(ab.clone());
        for z in [c(0.3, 0.1), c(1.0, 1.0), c(1.8, -0.7)] {
            for w in [c(0.7, -0.4), c(1.2, 1.5)] {
                let got = out.colligation.kernel_colligation(&setting, z, w).unwrap();
                assert!(max_diff(&got, &kernel(z, w).unwrap()) < 1e-9);
                let direct = out.colligation.kernel_direct(&setting, z, w).unwrap();
                assert!(max_diff(&direct, &kernel(z, w).unwrap()) < 1e-9);
            }
        }
    }

    #[test]
    fn section_resolvents_satisfy_step_two() {
        let mut rng = SplitMix64::new(97);
        let ab = AbPair::half_plane();
        let alpha = c(0.8, -0.1);
        let mus: Vec<C64> = (0..5)
            .map(|_| rng.complex_in_rect((0.2, 1.8), (-1.0, 1.0)))
            .collect();
        let r = section_resolvents(&ab, alpha, &mus).unwrap();
        // a(alpha) R(b,a) + b(alpha) R(a,b) = -I
        let pencil = r.pencil(&ab, alpha);
        assert!(max_diff(&pencil, &-CMat::identity(5, 5)) < 1e-12);
        for _ in 0..10 {
            let z = rng.complex_in_rect((0.2, 1.8), (-1.0, 1.0));
            let (r1, r2) = step_two_residuals(&r.rab, &r.rba, &ab, alpha, z).unwrap();
            assert!(r1 < 1e-9 && r2 < 1e-9, "{r1} {r2}");
        }
    }

    #[test]
    fn section_model_forms_agree() {
        let ab = AbPair::half_plane();
        let zeros = [c(0.5, 0.3), c(1.2, -0.6), c(0.4, -1.0)];
        let kernel = |z: C64, w: C64| {
            Ok(CMat::from_element(
                1,
                1,
                (re(1.0) - blaschke(&zeros, z) * blaschke(&zeros, w).conj()) / ab.rho(z, w),
            ))
        };
        let choice = PointChoice::with_basis(&zeros, 1).unwrap();
        let alpha = c(1.1, 0.3);
        let m = FiniteModelSpace::from_kernel_sections(
            kernel,
            &Metric::euclidean(1),
            alpha,
            &choice,
            Some(&ab),
        )
        .unwrap();
        let forms = inequality_forms(&m, &ab, None).unwrap();
        let rho = ab.rho(alpha, alpha).re;
        let scale = max_abs(&forms.unified).max(1e-12);
        assert!(max_diff(&forms.contraction, &forms.unified.scale(-rho)) < 1e-9 * scale.max(1.0));
        // isometric inclusion: the slack vanishes
        assert!(max_abs(&forms.contraction) < 1e-9);
    }
}
