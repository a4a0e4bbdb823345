//! The half-space kernel `k(p, q) = (p + conj q)^{-*}` and the resolvent identity
//! it satisfies on real base points.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// A point of the open right half-space `Re p > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfSpacePoint(Quaternion);

impl HalfSpacePoint {
    pub fn new(p: Quaternion) -> Result<Self> {
        if !(p.re() > 0.0) {
            return Err(Error::DomainViolation(format!(
                "{p} is not in the right half-space"
            )));
        }
        Ok(Self(p))
    }

    pub fn get(self) -> Quaternion {
        self.0
    }
}

/// Both factorizations of the kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelForms {
    /// `(conj p + conj q)(|p|^2 + 2 Re(p) conj q + conj(q)^2)^{-1}`.
    pub conjugate_form: Quaternion,
    /// `(|q|^2 + 2 Re(q) p + p^2)^{-1}(p + q)`.
    pub regular_form: Quaternion,
}

impl KernelForms {
    pub fn discrepancy(&self) -> f64 {
        (self.conjugate_form - self.regular_form).norm()
    }
}

pub fn k_forms(p: Quaternion, q: Quaternion) -> Result<KernelForms> {
    let qb = q.conj();
    let d1 = Quaternion::real(p.norm_sqr()) + qb * (2.0 * p.re()) + qb * qb;
    let d2 = Quaternion::real(q.norm_sqr()) + p * (2.0 * q.re()) + p * p;
    let singular = |d: Quaternion| d.norm() <= 1e-300;
    if singular(d1) || singular(d2) {
        return Err(Error::SingularDenominator(format!("k({p}, {q})")));
    }
    Ok(KernelForms {
        conjugate_form: (p.conj() + qb) * d1.inv()?,
        regular_form: d2.inv()? * (p + q),
    })
}

/// `k(p, q)`, slice regular in `p` on the left (the regular form).
pub fn k_halfspace(p: HalfSpacePoint, q: HalfSpacePoint) -> Result<Quaternion> {
    Ok(k_forms(p.get(), q.get())?.regular_form)
}

/// Unchecked kernel evaluation used where the domain is enforced elsewhere.
pub(crate) fn k_raw(p: Quaternion, q: Quaternion) -> Result<Quaternion> {
    Ok(k_forms(p, q)?.regular_form)
}

/// `|-nu k(nu, mu) - k(nu, mu) conj(mu) + 1|`.
pub fn kernel_proof_identity(mu: Quaternion, nu: Quaternion) -> Result<f64> {
    let k = k_raw(nu, mu)?;
    Ok((Quaternion::ONE - nu * k - k * mu.conj()).norm())
}

/// Candidate constants `c` in `R_alpha k(., mu) = -k(., mu) c^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenConstant {
    /// `c = alpha + conj(mu)`.
    AlphaPlusMuBar,
    /// `c = alpha - conj(mu)`.
    AlphaMinusMuBar,
}

impl EigenConstant {
    fn value(self, alpha: f64, mu: Quaternion) -> Quaternion {
        match self {
            EigenConstant::AlphaPlusMuBar => Quaternion::real(alpha) + mu.conj(),
            EigenConstant::AlphaMinusMuBar => Quaternion::real(alpha) - mu.conj(),
        }
    }
}

/// `|(p - alpha)^{-1}(k(p, mu) - k(alpha, mu)) + k(p, mu) c^{-1}|`: the difference
/// quotient against the claimed eigen-relation.
pub fn eigen_relation_residual(
    alpha: f64,
    mu: Quaternion,
    p: Quaternion,
    constant: EigenConstant,
) -> Result<f64> {
    let a = Quaternion::real(alpha);
    let quotient = (p - a).inv()? * (k_raw(p, mu)? - k_raw(a, mu)?);
    let claimed = -k_raw(p, mu)? * constant.value(alpha, mu).inv()?;
    Ok((quotient - claimed).norm())
}

/// A finite span `f = (1/2pi) sum_i k(., mu_i) c_i` of normalized kernel sections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QSectionSpan {
    pub terms: Vec<(Quaternion, Quaternion)>,
}

impl QSectionSpan {
    pub fn single(mu: Quaternion) -> Self {
        Self {
            terms: vec![(mu, Quaternion::ONE)],
        }
    }

    pub fn eval(&self, p: Quaternion) -> Result<Quaternion> {
        let mut acc = Quaternion::ZERO;
        for &(mu, c) in &self.terms {
            acc += k_raw(p, mu)? * c * (1.0 / (2.0 * PI));
        }
        Ok(acc)
    }

    /// `R_alpha` through the eigen-relation: `c_i -> -c^{-1} c_i`.
    pub fn resolvent(&self, alpha: f64, constant: EigenConstant) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(mu, c)| Ok((mu, -(constant.value(alpha, mu).inv()? * c))))
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    /// `<f, g> = sum_{i,j} conj(d_j) k(nu_j, mu_i) c_i / (2 pi)`.
    pub fn inner(&self, other: &Self) -> Result<Quaternion> {
        let mut acc = Quaternion::ZERO;
        for &(mu, c) in &self.terms {
            for &(nu, d) in &other.terms {
                acc += d.conj() * k_raw(nu, mu)? * c * (1.0 / (2.0 * PI));
            }
        }
        Ok(acc)
    }
}

/// Modulus of
/// `<R_alpha f, g> + <f, R_beta g> + (alpha + beta)<R_alpha f, R_beta g> + 2 pi conj(g(beta)) f(alpha)`
/// for real `alpha, beta > 0`.
pub fn check_halfspace_resolvent_identity_spans(
    alpha: f64,
    beta: f64,
    f: &QSectionSpan,
    g: &QSectionSpan,
    constant: EigenConstant,
) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::DomainViolation(format!(
            "alpha = {alpha} and beta = {beta} must be positive reals"
        )));
    }
    for &(mu, _) in f.terms.iter().chain(&g.terms) {
        HalfSpacePoint::new(mu)?;
    }
    let rf = f.resolvent(alpha, constant)?;
    let rg = g.resolvent(beta, constant)?;
    let point =
        g.eval(Quaternion::real(beta))?.conj() * f.eval(Quaternion::real(alpha))? * (2.0 * PI);
    let lhs = rf.inner(g)? + f.inner(&rg)? + rf.inner(&rg)? * (alpha + beta) + point;
    Ok(lhs.norm())
}

/// The same identity on the single sections `k(., mu)`, `k(., nu)`, with the eigen-constant `alpha + conj(mu)`.
pub fn check_halfspace_resolvent_identity(
    alpha: f64,
    beta: f64,
    mu: HalfSpacePoint,
    nu: HalfSpacePoint,
) -> Result<f64> {
    check_halfspace_resolvent_identity_spans(
        alpha,
        beta,
        &QSectionSpan::single(mu.get()),
        &QSectionSpan::single(nu.get()),
        EigenConstant::AlphaPlusMuBar,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_h(rng: &mut SplitMix64) -> Quaternion {
        let q = Quaternion::random(rng);
        Quaternion::new(0.1 + q.x0.abs(), q.x1, q.x2, q.x3)
    }

    #[test]
    fn forms_agree() {
        let mut rng = SplitMix64::new(300);
        for _ in 0..50 {
            let (p, q) = (random_h(&mut rng), random_h(&mut rng));
            let f = k_forms(p, q).unwrap();
            assert!(
                f.discrepancy() < 1e-12 * (1.0 + f.regular_form.norm()),
                "{}",
                f.discrepancy()
            );
        }
    }

    #[test]
    fn real_points_and_real_base() {
        let k = k_raw(Quaternion::real(0.5), Quaternion::real(1.5)).unwrap();
        assert!((k - Quaternion::real(0.5)).norm() < 1e-15);
        let mut rng = SplitMix64::new(301);
        for _ in 0..20 {
            let mu = random_h(&mut rng);
            let alpha = rng.uniform(0.1, 3.0);
            let k = k_raw(Quaternion::real(alpha), mu).unwrap();
            let want = (Quaternion::real(alpha) + mu.conj()).inv().unwrap();
            assert!((k - want).norm() < 1e-14);
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let mut rng = SplitMix64::new(302);
        for _ in 0..50 {
            let (p, q) = (random_h(&mut rng), random_h(&mut rng));
            assert!((k_raw(p, q).unwrap() - k_raw(q, p).unwrap().conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn proof_identity() {
        let mut rng = SplitMix64::new(303);
        for _ in 0..50 {
            assert!(kernel_proof_identity(random_h(&mut rng), random_h(&mut rng)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn eigen_constant_is_alpha_plus_mu_bar() {
        let mut rng = SplitMix64::new(304);
        for _ in 0..20 {
            let mu = random_h(&mut rng);
            let p = random_h(&mut rng);
            let alpha = rng.uniform(0.2, 2.0);
            assert!(
                eigen_relation_residual(alpha, mu, p, EigenConstant::AlphaPlusMuBar).unwrap()
                    < 1e-12
            );
            assert!(
                eigen_relation_residual(alpha, mu, p, EigenConstant::AlphaMinusMuBar).unwrap()
                    > 1e-6
            );
        }
    }

    #[test]
    fn resolvent_inner_identity_on_sections_and_spans() {
        let one = HalfSpacePoint::new(Quaternion::ONE).unwrap();
        assert!(check_halfspace_resolvent_identity(1.0, 1.0, one, one).unwrap() < 1e-15);
        let mut rng = SplitMix64::new(305);
        for _ in 0..100 {
            let mu = HalfSpacePoint::new(random_h(&mut rng)).unwrap();
            let nu = HalfSpacePoint::new(random_h(&mut rng)).unwrap();
            let (a, b) = (rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0));
            assert!(check_halfspace_resolvent_identity(a, b, mu, nu).unwrap() < 1e-10);
        }
        let span = |rng: &mut SplitMix64| QSectionSpan {
            terms: (0..3)
                .map(|_| (random_h(rng), Quaternion::random(rng)))
                .collect(),
        };
        let (f, g) = (span(&mut rng), span(&mut rng));
        assert!(
            check_halfspace_resolvent_identity_spans(
                0.7,
                1.3,
                &f,
                &g,
                EigenConstant::AlphaPlusMuBar
            )
            .unwrap()
                < 1e-10
        );
        assert!(
            check_halfspace_resolvent_identity_spans(
                0.7,
                1.3,
                &f,
                &g,
                EigenConstant::AlphaMinusMuBar
            )
            .unwrap()
                > 1e-6
        );
    }

    #[test]
    fn rejects_complex_base_point() {
        let one = HalfSpacePoint::new(Quaternion::ONE).unwrap();
        assert!(matches!(
            check_halfspace_resolvent_identity(-1.0, 1.0, one, one),
            Err(Error::DomainViolation(_))
        ));
        assert!(HalfSpacePoint::new(Quaternion::new(-0.5, 1.0, 0.0, 0.0)).is_err());
    }
}
