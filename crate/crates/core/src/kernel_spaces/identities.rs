//! Residuals of the structural resolvent identities on kernel-section spans.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{AbRole, RationalSection, Setting};
use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::linalg::{vmax, CVec, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// Disk: `<f,g> + a<R_a f,g> + conj(b)<f,R_b g> - (1 - a conj(b))<R_a f,R_b g> = [f(a), g(b)]`.
    DiskResolventForm,
    /// Half-plane: `<R_a f,g> + <f,R_b g> + (a + conj(b))<R_a f,R_b g> + 2 pi [f(a), g(b)] = 0`.
    HalfPlaneResolventForm,
    /// `(a, b)` pair: `<R(a,b,.) f, R(a,b,.) g> - <R(b,a,.) f, R(b,a,.) g> + [f(a), g(b)] = 0`.
    AbResolventAdjoint,
}

fn point_form(fa: &CVec, gb: &CVec, metric: Option<&Metric>) -> C64 {
    match metric {
        Some(m) => m.form(fa, gb),
        None => gb.dotc(fa),
    }
}

/// Modulus of the left-hand side of the chosen identity, evaluated in closed form.
pub fn check_identity(
    which: Identity,
    f: &RationalSection,
    g: &RationalSection,
    alpha: C64,
    beta: C64,
    metric: Option<&Metric>,
) -> Result<f64> {
    let setting = f.setting();
    match (which, setting) {
        (Identity::DiskResolventForm, Setting::Disk)
        | (Identity::HalfPlaneResolventForm, Setting::HalfPlane)
        | (Identity::AbResolventAdjoint, Setting::Rho(_)) => {}
        _ => {
            return Err(Error::UnsupportedFunction(format!(
                "{which:?} does not apply to {setting:?}"
            )))
        }
    }
    setting.check(alpha)?;
    setting.check(beta)?;
    let ip = |x: &RationalSection, y: &RationalSection| x.inner_product(y, metric);
    let pf = point_form(&f.eval(alpha)?, &g.eval(beta)?, metric);

    let lhs = match which {
        Identity::DiskResolventForm => {
            let (rf, rg) = (f.resolvent(alpha)?, g.resolvent(beta)?);
            ip(f, g)? + alpha * ip(&rf, g)? + beta.conj() * ip(f, &rg)?
                - (C64::new(1.0, 0.0) - alpha * beta.conj()) * ip(&rf, &rg)?
                - pf
        }
        Identity::HalfPlaneResolventForm => {
            let (rf, rg) = (f.resolvent(alpha)?, g.resolvent(beta)?);
            ip(&rf, g)? + ip(f, &rg)? + (alpha + beta.conj()) * ip(&rf, &rg)? + pf * (2.0 * PI)
        }
        Identity::AbResolventAdjoint => {
            let rab = ip(
                &f.resolvent_ab(AbRole::Rab, alpha)?,
                &g.resolvent_ab(AbRole::Rab, beta)?,
            )?;
            let rba = ip(
                &f.resolvent_ab(AbRole::Rba, alpha)?,
                &g.resolvent_ab(AbRole::Rba, beta)?,
            )?;
            rab - rba + pf
        }
    };
    Ok(lhs.norm())
}

/// `max_z |(R_a f - R_b f)(z) - (a - b)(R_a R_b f)(z)|` over the given points.
pub fn resolvent_identity_residual(
    f: &RationalSection,
    alpha: C64,
    beta: C64,
    points: &[C64],
) -> Result<f64> {
    let ra = f.resolvent(alpha)?;
    let rb = f.resolvent(beta)?;
    let rab = rb.resolvent(alpha)?;
    let mut worst: f64 = 0.0;
    for &z in points {
        let lhs = ra.eval(z)? - rb.eval(z)?;
        let rhs = rab.eval(z)? * (alpha - beta);
        worst = worst.max(vmax(&(lhs - rhs)));
    }
    Ok(worst)
}
