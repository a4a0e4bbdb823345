//! Invariants checked over seeded random instances.

use krein_kernels::indefinite::{
    coisometry_defect, defect_factorization, indef_adjoint, MetricMap,
};
use krein_kernels::kernel_spaces::{resolvent_identity_residual, RationalSection, Setting};
use krein_kernels::linalg::{c, max_diff, vstack, CMat};
use krein_kernels::quaternion::{lift_intrinsic, QMatrix, Quaternion};
use krein_kernels::rng::SplitMix64;
use krein_kernels::schur::{random_colligation, sample_regular_points, RandomShape};
use krein_kernels::suites::random_ab_pair;
use krein_kernels::unified::j0_unitary;
use proptest::prelude::*;

fn shape(rng: &mut SplitMix64, alpha: krein_kernels::linalg::C64) -> RandomShape {
    let dim = rng.range(1, 6);
    let neg = rng.range(0, dim.min(2));
    RandomShape {
        state: (dim, neg),
        output: (2, rng.range(0, 1)),
        extra_input: rng.range(0, 1),
        spread: 0.6,
        alpha,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_colligations_are_coisometric(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let s = shape(&mut rng, c(1.0, 0.0));
        let col = random_colligation(&mut rng, s).unwrap();
        prop_assert!(coisometry_defect(&col.block()) < 1e-9);
        prop_assert_eq!(col.d.ind_minus(), col.c.ind_minus());
    }

    #[test]
    fn defect_factor_reproduces_the_defect(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let s = shape(&mut rng, c(1.0, 0.0));
        let col = random_colligation(&mut rng, s).unwrap();
        let m = MetricMap::new(vstack(&col.t, &col.g), col.p.clone(), col.p.direct_sum(&col.c)).unwrap();
        // Ambiguous ranks are reported as errors rather than factored.
        let Ok(f) = defect_factorization(&m, 1e-9) else { return Ok(()) };
        let xx = f.x.compose(&indef_adjoint(&f.x)).unwrap().matrix;
        let cc = m.compose(&indef_adjoint(&m)).unwrap().matrix;
        let n = cc.nrows();
        let scale = 1.0 + krein_kernels::linalg::max_abs(&cc);
        prop_assert!(max_diff(&xx, &(CMat::identity(n, n) - cc)) < 1e-9 * scale);
    }

    #[test]
    fn kernel_routes_agree_on_regular_points(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        for setting in [Setting::Disk, Setting::HalfPlane] {
            let alpha = if setting == Setting::Disk { c(0.0, 0.0) } else { c(1.0, 0.3) };
            let s = shape(&mut rng, alpha);
            let col = random_colligation(&mut rng, s).unwrap();
            let pts = sample_regular_points(&mut rng, &col, &setting, 4, 20.0).unwrap();
            for &z in &pts {
                for &w in &pts {
                    let direct = col.kernel_direct(&setting, z, w).unwrap();
                    let through = col.kernel_colligation(&setting, z, w).unwrap();
                    prop_assert!(max_diff(&direct, &through) < 1e-9 * (1.0 + krein_kernels::linalg::max_abs(&direct)));
                }
            }
        }
    }

    #[test]
    fn resolvent_identity_on_kernel_sections(
        mus in prop::collection::vec((0.05f64..3.0, -3.0f64..3.0), 1..6),
        a in (0.1f64..2.0, -2.0f64..2.0),
        b in (0.1f64..2.0, -2.0f64..2.0),
    ) {
        let terms = mus.iter().map(|&(x, y)| (c(x, y), krein_kernels::linalg::to_cvec(&[c(1.0, -y)]))).collect();
        let f = RationalSection::from_terms(Setting::HalfPlane, 1, terms).unwrap();
        let points = [c(0.3, 0.2), c(1.7, -0.4), c(0.9, 2.2)];
        let r = resolvent_identity_residual(&f, c(a.0, a.1), c(b.0, b.1), &points).unwrap();
        prop_assert!(r < 1e-8, "residual {r}");
    }

    #[test]
    fn rho_is_j0_invariant(seed in any::<u64>(), s in -1.5f64..1.5, phases in prop::array::uniform4(-3.0f64..3.0)) {
        let mut rng = SplitMix64::new(seed);
        let ab = random_ab_pair(&mut rng, seed % 2 == 0);
        let moved = ab.transform(&j0_unitary(s, phases)).unwrap();
        let z = rng.complex_in_rect((-1.0, 1.0), (-1.0, 1.0));
        let w = rng.complex_in_rect((-1.0, 1.0), (-1.0, 1.0));
        let (r0, r1) = (ab.rho(z, w), moved.rho(z, w));
        prop_assert!((r0 - r1).norm() < 1e-10 * (1.0 + r0.norm()) * s.cosh().powi(2), "{r0} vs {r1}");
        prop_assert!(ab.classify(z) == moved.classify(z) || ab.rho(z, z).re.abs() < 1e-9);
    }

    #[test]
    fn complex_embedding_is_multiplicative(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let (n, m, k) = (rng.range(1, 4), rng.range(1, 4), rng.range(1, 4));
        let a = QMatrix::random(&mut rng, n, m);
        let b = QMatrix::random(&mut rng, m, k);
        prop_assert!(max_diff(&(&a * &b).embed(), &(a.embed() * b.embed())) < 1e-12);
        prop_assert!(max_diff(&a.adjoint().embed(), &a.embed().adjoint()) == 0.0);
    }

    #[test]
    fn intrinsic_lifts_commute(x0 in -2.0f64..2.0, v in prop::array::uniform3(-2.0f64..2.0)) {
        let p = Quaternion::new(x0, v[0], v[1], v[2]);
        prop_assume!(p.imag().norm() > 1e-6);
        let f = |z: krein_kernels::linalg::C64| Ok(z * z + c(1.0, 0.0));
        let lifted = lift_intrinsic(f, p).unwrap();
        // An intrinsic function maps the slice through p to itself, so values commute with p.
        prop_assert!((lifted * p - p * lifted).norm() < 1e-12 * (1.0 + lifted.norm() * p.norm()));
        prop_assert!((lifted - (p * p + Quaternion::ONE)).norm() < 1e-12 * (1.0 + p.norm_sqr()));
    }
}
