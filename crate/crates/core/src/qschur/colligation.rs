//! Quaternionic colligations on the half-space and the kernels of their Schur functions.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::k_raw;
use crate::error::{Error, Result};
use crate::indefinite::{coisometry_defect, herm_eig, Inertia, Metric, MetricMap};
use crate::linalg::{max_abs, CMat, C64};
use crate::quaternion::{
    embed_metric, lift_intrinsic, star_inverse_resolvent, star_left, star_right, QMatrix,
    Quaternion,
};
use crate::schur::Colligation;
use crate::unified::{disk_variable, AbPair, Zone};

/// Block operator `[[T, F], [G, H]]` with quaternionic entries and a real base point.
#[derive(Debug, Clone)]
pub struct QColligation {
    pub t: QMatrix,
    pub f: QMatrix,
    pub g: QMatrix,
    pub h: QMatrix,
    pub p: Metric,
    pub d: Metric,
    pub c: Metric,
    pub alpha: f64,
}

impl QColligation {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        t: QMatrix,
        f: QMatrix,
        g: QMatrix,
        h: QMatrix,
        p: Metric,
        d: Metric,
        c: Metric,
        alpha: f64,
        tol: f64,
    ) -> Result<Self> {
        let (np, nd, nc) = (p.dim(), d.dim(), c.dim());
        for (m, want, name) in [
            (&t, (np, np), "T"),
            (&f, (np, nd), "F"),
            (&g, (nc, np), "G"),
            (&h, (nc, nd), "H"),
        ] {
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        if !(alpha > 0.0) {
            return Err(Error::DomainViolation(format!(
                "base point {alpha} must be a positive real"
            )));
        }
        if d.ind_minus() != c.ind_minus() {
            return Err(Error::DimensionMismatch(
                "ind_-(D) differs from ind_-(C)".into(),
            ));
        }
        let col = Self {
            t,
            f,
            g,
            h,
            p,
            d,
            c,
            alpha,
        };
        let defect = coisometry_defect(&col.embedded_block());
        if defect > tol {
            return Err(Error::NotCoisometric { defect });
        }
        Ok(col)
    }

    /// A complex colligation read on the slice `C_i`; its base point must be real.
    pub fn from_complex(col: &Colligation, tol: f64) -> Result<Self> {
        if col.alpha.im != 0.0 {
            return Err(Error::DomainViolation(format!(
                "base point {} must be real",
                col.alpha
            )));
        }
        Self::new(
            QMatrix::from_complex(&col.t),
            QMatrix::from_complex(&col.f),
            QMatrix::from_complex(&col.g),
            QMatrix::from_complex(&col.h),
            col.p.clone(),
            col.d.clone(),
            col.c.clone(),
            col.alpha.re,
            tol,
        )
    }

    pub fn block(&self) -> QMatrix {
        QMatrix::block2(&self.t, &self.f, &self.g, &self.h)
    }

    /// The block through the complex embedding, with doubled metrics.
    pub fn embedded_block(&self) -> MetricMap {
        MetricMap {
            matrix: self.block().embed(),
            domain: embed_metric(&self.p.direct_sum(&self.d)),
            codomain: embed_metric(&self.p.direct_sum(&self.c)),
        }
    }

    /// `u * G * (I - u T)^{-*} F + H` for an intrinsic value `u` of the disk variable.
    fn through_disk_variable(&self, u: Quaternion) -> Result<QMatrix> {
        let gr = star_inverse_resolvent(&self.t, &self.g, u)?;
        Ok(&self.h + &(&gr * &self.f).scale_left(u))
    }

    /// `S(p) = H + b(p) G * (I - b(p) T)^{-*} F` with the intrinsic `b(p) = (p - alpha)(p + alpha)^{-1}`.
    pub fn eval_q(&self, p: Quaternion) -> Result<QMatrix> {
        let alpha = self.alpha;
        let b = lift_intrinsic(
            |z| {
                let den = z + alpha;
                if den.norm() == 0.0 {
                    return Err(Error::SingularDenominator(format!("p + alpha at {z}")));
                }
                Ok((z - alpha) / den)
            },
            p,
        )?;
        self.through_disk_variable(b)
    }

    /// Ball form `S(p) = H + p G * (I - p T)^{-*} F`.
    pub fn eval_ball(&self, p: Quaternion) -> Result<QMatrix> {
        self.through_disk_variable(p)
    }

    /// The `(a, b)` form with `b_sigma(p) = (sigma(p) - sigma(alpha)) / (1 - sigma(p) sigma(alpha))`.
    pub fn eval_q_unified(&self, ab: &AbPair, p: Quaternion) -> Result<QMatrix> {
        if !ab.is_intrinsic() {
            return Err(Error::NonIntrinsicPair);
        }
        let alpha = C64::new(self.alpha, 0.0);
        if ab.classify(alpha) != Zone::OmegaPlus {
            return Err(Error::DomainViolation(format!(
                "base point {alpha} is not in Omega_+"
            )));
        }
        let b = lift_intrinsic(|z| disk_variable(ab, alpha, z), p)?;
        self.through_disk_variable(b)
    }

    /// `S(q)^[*] = J_D S(q)^H J_C` as a quaternionic matrix.
    fn star_adjoint(&self, s: &QMatrix) -> QMatrix {
        let jd = signs_matrix(&self.d);
        let jc = signs_matrix(&self.c);
        &(&jd * &s.adjoint()) * &jc
    }

    /// `K_S(p, q) = (1/2pi)(k(p,q) I - S(p) * k(p,q) *_r S(q)^[*])`.
    pub fn kernel_q(&self, p: Quaternion, q: Quaternion) -> Result<QMatrix> {
        kernel_from_function(
            |x| self.eval_q(x),
            |s| self.star_adjoint(s),
            self.c.dim(),
            self.d.dim(),
            p,
            q,
        )
    }

    /// Residuals of `2pi(p K + K^[*] conj q)` (starred) and `2pi(p K + K conj q)` (unstarred)
    /// against `I - S(p) S(q)^[*]`.
    pub fn verify_stein(&self, p: Quaternion, q: Quaternion) -> Result<SteinResiduals> {
        let k = self.kernel_q(p, q)?;
        let jc = signs_matrix(&self.c);
        let k_star = &(&jc * &k.adjoint()) * &jc;
        let sp = self.eval_q(p)?;
        let sq = self.eval_q(q)?;
        let rhs = &QMatrix::identity(self.c.dim()) - &(&sp * &self.star_adjoint(&sq));
        let pk = k.scale_left(p);
        let starred = (&pk + &k_star.scale_right(q.conj())).scale(2.0 * PI);
        let unstarred = (&pk + &k.scale_right(q.conj())).scale(2.0 * PI);
        Ok(SteinResiduals {
            starred: starred.max_diff(&rhs),
            unstarred: unstarred.max_diff(&rhs),
        })
    }

    /// Negative squares of `K_S` on `points`, through the complex embedding.
    pub fn negative_squares(&self, points: &[Quaternion], tol: f64) -> Result<QNegativeSquares> {
        let jc = signs_matrix(&self.c);
        let blocks: Vec<Vec<QMatrix>> = points
            .par_iter()
            .map(|&pl| {
                points
                    .iter()
                    .map(|&pk| self.kernel_q(pl, pk).map(|k| &jc * &k))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let m = self.c.dim();
        let n = points.len();
        let gram = QMatrix::from_fn(n * m, n * m, |i, j| blocks[i / m][j / m][(i % m, j % m)]);
        quaternionic_inertia(&gram, tol)
    }
}

/// `J` as a real quaternionic matrix.
fn signs_matrix(j: &Metric) -> QMatrix {
    let n = j.dim();
    QMatrix::from_fn(n, n, |a, b| {
        if a == b {
            Quaternion::real(f64::from(j.signs()[a]))
        } else {
            Quaternion::ZERO
        }
    })
}

/// `(1/2pi)(k(p,q) I - S(p) * k(p,q) *_r S(q)^[*])` for any left slice function `S`.
///
/// The left product is taken in `p`; the right product in `r = conj q`, where both
/// `k(p, conj r)` and `S(conj r)^[*]` are right slice functions.
pub fn kernel_from_function<S, A>(
    s: S,
    adjoint: A,
    nc: usize,
    nd: usize,
    p: Quaternion,
    q: Quaternion,
) -> Result<QMatrix>
where
    S: Fn(Quaternion) -> Result<QMatrix>,
    A: Fn(&QMatrix) -> QMatrix,
{
    let id_d = QMatrix::identity(nd);
    let left = |qq: Quaternion| star_left(&s, |x| Ok(id_d.scale_right(k_raw(x, qq)?)), p);
    let w = star_right(
        |r: Quaternion| left(r.conj()),
        |r: Quaternion| Ok(adjoint(&s(r.conj())?)),
        q.conj(),
    )?;
    let kpq = k_raw(p, q)?;
    Ok((&QMatrix::identity(nc).scale_right(kpq) - &w).scale(1.0 / (2.0 * PI)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteinResiduals {
    pub starred: f64,
    pub unstarred: f64,
}

/// Inertia of a quaternionic Hermitian matrix read off its embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QNegativeSquares {
    /// Negative eigenvalues of the embedded matrix; always even for Hermitian input.
    pub embedded_negatives: usize,
    pub kappa: usize,
}

pub fn quaternionic_inertia(m: &QMatrix, tol: f64) -> Result<QNegativeSquares> {
    let e = m.embed();
    let h = (&e + e.adjoint()) * C64::new(0.5, 0.0);
    let asym = max_abs(&(&e - &h));
    if asym > 1e-8 * max_abs(&e).max(1.0) {
        return Err(Error::NonHermitianKernel { asymmetry: asym });
    }
    let eig = herm_eig(&h, 1e-12)?;
    let scale = eig
        .values
        .iter()
        .fold(0.0_f64, |a, v| a.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let inertia = Inertia::from_values(&eig.values, tol * scale);
    Ok(QNegativeSquares {
        embedded_negatives: inertia.n_minus,
        kappa: inertia.n_minus / 2,
    })
}

/// `b_u(p) = (1 + p u)^{-1}(p + u)` for real `u` in `(-1, 1)`.
pub fn blaschke_q(u: f64, p: Quaternion) -> Result<Quaternion> {
    if !(u.abs() < 1.0) {
        return Err(Error::DomainViolation(format!(
            "u = {u} must lie in (-1, 1)"
        )));
    }
    let den = Quaternion::ONE + p * u;
    if den.norm() <= 1e-300 {
        return Err(Error::SingularDenominator(format!("1 + p u at {p}")));
    }
    Ok(den.inv()? * (p + Quaternion::real(u)))
}

/// `(a(alpha) b(p) - b(alpha) a(p))^{-1}(a(p) f(p) - a(alpha) f(alpha))` and its `(b, a)` twin,
/// for intrinsic `a, b` and a real `alpha`; returns `max |a(alpha) R(b,a) f + b(alpha) R(a,b) f + f|`.
pub fn resolvent_sum_residual_q<F>(
    ab: &AbPair,
    f: F,
    alpha: f64,
    points: &[Quaternion],
) -> Result<f64>
where
    F: Fn(Quaternion) -> Result<Quaternion>,
{
    if !ab.is_intrinsic() {
        return Err(Error::NonIntrinsicPair);
    }
    let at = |poly: &crate::poly::Poly, p: Quaternion| lift_intrinsic(|z| Ok(poly.eval(z)), p);
    let a_al = ab.a.eval(C64::new(alpha, 0.0)).re;
    let b_al = ab.b.eval(C64::new(alpha, 0.0)).re;
    let f_al = f(Quaternion::real(alpha))?;
    let mut worst = 0.0_f64;
    for &p in points {
        let (ap, bp, fp) = (at(&ab.a, p)?, at(&ab.b, p)?, f(p)?);
        let rab = (bp * a_al - ap * b_al).inv()? * (ap * fp - f_al * a_al);
        let rba = (ap * b_al - bp * a_al).inv()? * (bp * fp - f_al * b_al);
        worst = worst.max((rba * a_al + rab * b_al + fp).norm());
    }
    Ok(worst)
}

/// Slack of `[R_a f, R_a f] <= [(I + a R_a) f, (I + a R_a) f] - [f(a), f(a)]` on a ball model space
/// with real base point: `(I + aA)^H P (I + aA) - A^H P A - E^H J E`.
pub fn ball_inequality_slack(m: &crate::schur::FiniteModelSpace) -> Result<CMat> {
    if m.alpha.im != 0.0 || m.alpha.re.abs() >= 1.0 {
        return Err(Error::DomainViolation(format!(
            "base point {} must be real in (-1, 1)",
            m.alpha
        )));
    }
    let n = m.dim();
    let shifted = CMat::identity(n, n) + &m.a_alpha * m.alpha;
    let s = shifted.adjoint() * &m.gram * &shifted
        - m.a_alpha.adjoint() * &m.gram * &m.a_alpha
        - m.e_alpha.adjoint() * m.coeff_metric.apply_left(&m.e_alpha);
    Ok((&s + s.adjoint()) * C64::new(0.5, 0.0))
}

/// Construct on real-point data with the complex machinery, then read the result on `C_i`.
pub fn construct_q_from_space(
    m: &crate::schur::FiniteModelSpace,
    tol: f64,
) -> Result<(crate::schur::Construction, QColligation)> {
    if m.alpha.im != 0.0 {
        return Err(Error::DomainViolation(format!(
            "base point {} must be real",
            m.alpha
        )));
    }
    let out = crate::schur::construct_from_space(m, tol)?;
    let q = QColligation::from_complex(&out.colligation, 1e-8)?;
    Ok((out, q))
}
