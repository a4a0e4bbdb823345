//! Functions spanned by kernel sections plus a polynomial part.

use super::Setting;
use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::linalg::{CVec, C64};
use crate::poly::VecPoly;

/// Which of the two generalized resolvents of an `(a, b)` pair to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbRole {
    /// `(a(z) f(z) - a(alpha) f(alpha)) / (a(alpha) b(z) - b(alpha) a(z))`
    Rab,
    /// The same with the roles of `a` and `b` exchanged.
    Rba,
}

/// `f(z) = sum_i k(z, mu_i) c_i + p(z)` with `c_i, p(z) in C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSection {
    setting: Setting,
    dim: usize,
    terms: Vec<(C64, CVec)>,
    poly: VecPoly,
}

impl RationalSection {
    pub fn zero(setting: Setting, dim: usize) -> Self {
        Self {
            setting,
            dim,
            terms: Vec::new(),
            poly: VecPoly::zero(dim),
        }
    }

    /// `k(., mu) c`; `mu` must lie in the domain.
    pub fn kernel_section(setting: Setting, mu: C64, c: CVec) -> Result<Self> {
        setting.check(mu)?;
        let dim = c.len();
        Ok(Self {
            setting,
            dim,
            terms: vec![(mu, c)],
            poly: VecPoly::zero(dim),
        }
        .canonical())
    }

    /// Span of kernel sections `sum_i k(., mu_i) c_i`.
    pub fn from_terms(setting: Setting, dim: usize, terms: Vec<(C64, CVec)>) -> Result<Self> {
        for (mu, c) in &terms {
            setting.check(*mu)?;
            if c.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient of length {} in C^{dim}",
                    c.len()
                )));
            }
        }
        Ok(Self {
            setting,
            dim,
            terms,
            poly: VecPoly::zero(dim),
        }
        .canonical())
    }

    pub fn polynomial(setting: Setting, poly: VecPoly) -> Self {
        Self {
            setting,
            dim: poly.dim(),
            terms: Vec::new(),
            poly,
        }
    }

    pub fn setting(&self) -> &Setting {
        &self.setting
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(C64, CVec)] {
        &self.terms
    }

    pub fn poly(&self) -> &VecPoly {
        &self.poly
    }

    /// Merge equal poles and drop zero coefficients.
    fn canonical(mut self) -> Self {
        let mut merged: Vec<(C64, CVec)> = Vec::with_capacity(self.terms.len());
        for (mu, c) in self.terms.drain(..) {
            match merged.iter_mut().find(|(m, _)| *m == mu) {
                Some((_, acc)) => *acc += c,
                None => merged.push((mu, c)),
            }
        }
        merged.retain(|(_, c)| c.iter().any(|z| z.norm() != 0.0));
        self.terms = merged;
        self
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.setting != other.setting || self.dim != other.dim {
            return Err(Error::DimensionMismatch(
                "sections live in different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            setting: self.setting.clone(),
            dim: self.dim,
            terms,
            poly: self.poly.add(&other.poly),
        }
        .canonical())
    }

    pub fn scale(&self, s: C64) -> Self {
        let terms = self.terms.iter().map(|(mu, c)| (*mu, c * s)).collect();
        Self {
            setting: self.setting.clone(),
            dim: self.dim,
            terms,
            poly: self.poly.scale(s),
        }
        .canonical()
    }

    /// Pointwise value; fails only on a reflected pole.
    pub fn eval(&self, z: C64) -> Result<CVec> {
        let mut out = self.poly.eval(z);
        for (mu, c) in &self.terms {
            let k = self
                .setting
                .kernel_unchecked(z, *mu)
                .ok_or_else(|| Error::DomainViolation(format!("{z} is a pole of the section")))?;
            out += c * k;
        }
        Ok(out)
    }

    /// Classical difference quotient `R_alpha f = (f(z) - f(alpha)) / (z - alpha)`.
    ///
    /// On sections: `R_alpha k(., mu) = conj(mu)/(1 - alpha conj(mu)) k(., mu)` (disk)
    /// and `-1/(alpha + conj(mu)) k(., mu)` (half-plane).
    pub fn resolvent(&self, alpha: C64) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mu, c) in &self.terms {
            let (num, den) = match self.setting {
                Setting::Disk => (mu.conj(), C64::new(1.0, 0.0) - alpha * mu.conj()),
                Setting::HalfPlane => (C64::new(-1.0, 0.0), alpha + mu.conj()),
                Setting::Rho(_) => {
                    return Err(Error::UnsupportedFunction(
                        "use resolvent_ab in the (a, b) setting".into(),
                    ))
                }
            };
            if den.norm() <= 1e-14 * (1.0 + alpha.norm() * mu.norm()) {
                return Err(Error::PoleAtAlpha);
            }
            terms.push((*mu, c * (num / den)));
        }
        Ok(Self {
            setting: self.setting.clone(),
            dim: self.dim,
            terms,
            poly: self.poly.resolvent(alpha),
        }
        .canonical())
    }

    /// Generalized resolvent `R(a, b, alpha)` or `R(b, a, alpha)` on kernel sections of `1/rho`.
    ///
    /// `R(a,b,alpha) k(., mu) = conj(b(mu))/rho(alpha, mu) k(., mu)` and
    /// `R(b,a,alpha) k(., mu) = -conj(a(mu))/rho(alpha, mu) k(., mu)`.
    pub fn resolvent_ab(&self, role: AbRole, alpha: C64) -> Result<Self> {
        let Setting::Rho(ab) = &self.setting else {
            return Err(Error::UnsupportedFunction(
                "resolvent_ab needs an (a, b) setting".into(),
            ));
        };
        if !self.poly.is_zero() {
            return Err(Error::UnsupportedFunction(
                "polynomial part in the (a, b) setting".into(),
            ));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mu, c) in &self.terms {
            let r = ab.rho(alpha, *mu);
            if r.norm() <= 1e-14 {
                return Err(Error::ZeroDenominator(format!("rho({alpha}, {mu}) = 0")));
            }
            let num = match role {
                AbRole::Rab => ab.b.eval(*mu).conj(),
                AbRole::Rba => -ab.a.eval(*mu).conj(),
            };
            terms.push((*mu, c * (num / r)));
        }
        Ok(Self {
            setting: self.setting.clone(),
            dim: self.dim,
            terms,
            poly: self.poly.clone(),
        }
        .canonical())
    }

    /// `[f, g]_J = sum_{i,j} d_j^H J k(nu_j, mu_i) c_i` (plain inner product when `metric` is `None`).
    pub fn inner_product(&self, other: &Self, metric: Option<&Metric>) -> Result<C64> {
        self.compatible(other)?;
        if !self.poly.is_zero() || !other.poly.is_zero() {
            return Err(Error::UnsupportedFunction(
                "inner products need pure kernel-section spans".into(),
            ));
        }
        if let Some(m) = metric {
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch(
                    "metric does not match coefficient space".into(),
                ));
            }
        }
        let mut acc = C64::new(0.0, 0.0);
        for (mu, c) in &self.terms {
            for (nu, d) in &other.terms {
                let k = self.setting.kernel_unchecked(*nu, *mu).ok_or_else(|| {
                    Error::DomainViolation(format!("kernel singular at ({nu}, {mu})"))
                })?;
                let form = match metric {
                    Some(m) => m.form(c, d),
                    None => d.dotc(c),
                };
                acc += form * k;
            }
        }
        Ok(acc)
    }
}
