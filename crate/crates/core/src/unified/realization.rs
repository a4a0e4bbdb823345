//! Realizations in the `(a, b)` setting: two formulas for `S`, two for its kernel,
//! and the matrix identities linking them.

use super::{AbPair, Zone};
use crate::error::{Error, Result};
use crate::linalg::{max_diff, solve_right, CMat, C64};
use crate::schur::{Colligation, FiniteModelSpace};

fn check_base(ab: &AbPair, alpha: C64) -> Result<f64> {
    if ab.classify(alpha) != Zone::OmegaPlus {
        return Err(Error::DomainViolation(format!(
            "base point {alpha} is not in Omega_+"
        )));
    }
    Ok(ab.rho(alpha, alpha).re)
}

/// `R(a, b, alpha)` and `R(b, a, alpha)` on the state space of a colligation.
///
/// Inverting the defining relation `T = (rho(alpha, alpha) R(a,b) - conj(b(alpha)) I) / conj(a(alpha))`
/// gives `R(a,b) = (conj(a(alpha)) T + conj(b(alpha)) I) / rho(alpha, alpha)`; `R(b,a)` follows from
/// `a(alpha) R(b,a) + b(alpha) R(a,b) = -I`.
#[derive(Debug, Clone)]
pub struct StateResolvents {
    pub rab: CMat,
    pub rba: CMat,
}

impl StateResolvents {
    pub fn from_t(t: &CMat, ab: &AbPair, alpha: C64) -> Result<Self> {
        let rho = check_base(ab, alpha)?;
        let (aa, ba) = (ab.a.eval(alpha), ab.b.eval(alpha));
        let n = t.nrows();
        let id = CMat::identity(n, n);
        let rab = (t * aa.conj() + &id * ba.conj()).unscale(rho);
        let rba = -(&id + &rab * ba) / aa;
        Ok(Self { rab, rba })
    }

    /// `a(z) R(b,a) + b(z) R(a,b)`.
    pub fn pencil(&self, ab: &AbPair, z: C64) -> CMat {
        &self.rba * ab.a.eval(z) + &self.rab * ab.b.eval(z)
    }
}

/// `T = (rho(alpha, alpha) R(a,b) - conj(b(alpha)) I) / conj(a(alpha))`.
pub fn t_from_rab(rab: &CMat, ab: &AbPair, alpha: C64) -> Result<CMat> {
    let rho = check_base(ab, alpha)?;
    let n = rab.nrows();
    Ok(
        (rab * C64::new(rho, 0.0) - CMat::identity(n, n) * ab.b.eval(alpha).conj())
            / ab.a.eval(alpha).conj(),
    )
}

/// `b_sigma(z) = (sigma(z) - sigma(alpha)) / (1 - sigma(z) conj(sigma(alpha)))`.
pub fn disk_variable(ab: &AbPair, alpha: C64, z: C64) -> Result<C64> {
    let (sz, sa) = (ab.sigma(z)?, ab.sigma(alpha)?);
    let den = C64::new(1.0, 0.0) - sz * sa.conj();
    if den.norm() == 0.0 {
        return Err(Error::ZeroDenominator(format!(
            "1 - sigma(z) conj(sigma(alpha)) at {z}"
        )));
    }
    Ok((sz - sa) / den)
}

/// `S(z) = H + b_sigma(z) G (I - b_sigma(z) T)^{-1} F`.
pub fn eval_unified(col: &Colligation, ab: &AbPair, z: C64) -> Result<CMat> {
    check_base(ab, col.alpha)?;
    col.eval_disk(disk_variable(ab, col.alpha, z)?)
}

/// The resolvent form
/// `S(z) = H - |a(alpha)|^2 delta(z, alpha) / (a(alpha)^2 rho(alpha, alpha)) G (a(z) R(b,a) + b(z) R(a,b))^{-1} F`.
pub fn eval_unified_resolvent_form(col: &Colligation, ab: &AbPair, z: C64) -> Result<CMat> {
    let alpha = col.alpha;
    let rho = check_base(ab, alpha)?;
    let r = StateResolvents::from_t(&col.t, ab, alpha)?;
    let aa = ab.a.eval(alpha);
    let coef = aa.norm_sqr() * ab.delta(z, alpha) / (aa * aa * rho);
    let gp = solve_right(&col.g, &r.pencil(ab, z), || {
        Error::SingularResolvent(format!("{z}"))
    })?;
    Ok(&col.h - gp * &col.f * coef)
}

/// `C_z = -C_alpha (a(z) R(b,a) + b(z) R(a,b))^{-1}` with `C_alpha = G / sqrt(rho(alpha, alpha))`.
pub fn point_evaluation_unified(col: &Colligation, ab: &AbPair, z: C64) -> Result<CMat> {
    let rho = check_base(ab, col.alpha)?;
    let r = StateResolvents::from_t(&col.t, ab, col.alpha)?;
    let c_alpha = col.g.unscale(rho.sqrt());
    Ok(-solve_right(&c_alpha, &r.pencil(ab, z), || {
        Error::SingularResolvent(format!("{z}"))
    })?)
}

/// Both kernel routes in the `(a, b)` setting.
#[derive(Debug, Clone)]
pub struct UnifiedKernel {
    /// `(I - S(z) S(w)^[*]) / rho(z, w)` with `S` from the disk-variable formula.
    pub direct: CMat,
    /// `C_z C_w^[*]` with `C_z` from the resolvent pencil.
    pub resolvent: CMat,
}

impl UnifiedKernel {
    pub fn discrepancy(&self) -> f64 {
        max_diff(&self.direct, &self.resolvent)
    }
}

pub fn kernel_unified(col: &Colligation, ab: &AbPair, z: C64, w: C64) -> Result<UnifiedKernel> {
    let setting = crate::kernel_spaces::Setting::Rho(ab.clone());
    Ok(UnifiedKernel {
        direct: col.kernel_direct(&setting, z, w)?,
        resolvent: col.kernel_colligation(&setting, z, w)?,
    })
}

/// Residuals of the two step-two identities at `z`:
///
/// `(1 - s(z) conj(s(alpha))) I - (s(z) - s(alpha)) T = rho(alpha,alpha)/|a(alpha)|^2 (I - delta(z,alpha)/a(z) R(a,b))`
/// and `a(alpha)(R(b,a) + b(z)/a(z) R(a,b)) = -I + delta(z,alpha)/a(z) R(a,b)`,
/// where `T` is built from `rab` and `rba` is supplied independently.
pub fn step_two_residuals(
    rab: &CMat,
    rba: &CMat,
    ab: &AbPair,
    alpha: C64,
    z: C64,
) -> Result<(f64, f64)> {
    let rho = check_base(ab, alpha)?;
    let t = t_from_rab(rab, ab, alpha)?;
    let n = rab.nrows();
    let id = CMat::identity(n, n);
    let (sz, sa) = (ab.sigma(z)?, ab.sigma(alpha)?);
    let (az, bz, aa) = (ab.a.eval(z), ab.b.eval(z), ab.a.eval(alpha));
    let dz = ab.delta(z, alpha) / az;

    let lhs1 = &id * (C64::new(1.0, 0.0) - sz * sa.conj()) - &t * (sz - sa);
    let rhs1 = (&id - rab * dz).scale(rho / aa.norm_sqr());
    let lhs2 = (rba + rab * (bz / az)) * aa;
    let rhs2 = -&id + rab * dz;
    Ok((max_diff(&lhs1, &rhs1), max_diff(&lhs2, &rhs2)))
}

/// Hermitian forms of the model-space inequality in three equivalent shapes.
#[derive(Debug, Clone)]
pub struct InequalityForms {
    /// `R(a,b)^[*] R(a,b) - R(b,a)^[*] R(b,a) + C_alpha^[*] C_alpha` as a form (must be `<= 0`).
    pub unified: CMat,
    /// `I - T^[*] T - G^[*] G` after the change of variables (must be `>= 0`); equals `-rho(alpha,alpha) * unified`.
    pub contraction: CMat,
    /// Disk-variable form `(I + uR)^[*](I + uR) - R^[*]R - E^[*]E` with `u = sigma(alpha)`,
    /// `R = a(alpha) R(a,b)`, `E = a(alpha) C_alpha`; equals `-|a(alpha)|^2 * unified`.
    pub disk: CMat,
}

/// Evaluate the inequality forms of a model space whose `a_alpha` represents `R(a, b, alpha)`.
///
/// `rba` represents `R(b, a, alpha)`; pass `None` to derive it from `a(alpha) R(b,a) + b(alpha) R(a,b) = -I`.
pub fn inequality_forms(
    m: &FiniteModelSpace,
    ab: &AbPair,
    rba: Option<&CMat>,
) -> Result<InequalityForms> {
    let alpha = m.alpha;
    let rho = check_base(ab, alpha)?;
    let (p, a, e) = (&m.gram, &m.a_alpha, &m.e_alpha);
    let n = m.dim();
    let id = CMat::identity(n, n);
    let (aa, ba) = (ab.a.eval(alpha), ab.b.eval(alpha));
    let derived;
    let rba = match rba {
        Some(r) => r,
        None => {
            derived = -(&id + a * ba) / aa;
            &derived
        }
    };
    let je = m.coeff_metric.apply_left(e);
    let unified = a.adjoint() * p * a - rba.adjoint() * p * rba + e.adjoint() * &je;

    let t = t_from_rab(a, ab, alpha)?;
    let g = e * C64::new(rho.sqrt(), 0.0);
    let contraction = p - t.adjoint() * p * &t - g.adjoint() * m.coeff_metric.apply_left(&g);

    let u = ab.sigma(alpha)?;
    let r = a * aa;
    let em = e * aa;
    let shifted = &id + &r * u;
    let disk = shifted.adjoint() * p * &shifted
        - r.adjoint() * p * &r
        - em.adjoint() * m.coeff_metric.apply_left(&em);
    Ok(InequalityForms {
        unified,
        contraction,
        disk,
    })
}
