//! Coisometric colligations and the Schur functions they realize.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::indefinite::{coisometry_defect, Metric, MetricMap};
use crate::kernel_spaces::{negative_squares, PointChoice, Setting};
use crate::linalg::{block2, solve, CMat, C64};

/// Block operator `[[T, F], [G, H]] : P [+] D -> P [+] C` with base point `alpha`.
#[derive(Debug, Clone)]
pub struct Colligation {
    pub t: CMat,
    pub f: CMat,
    pub g: CMat,
    pub h: CMat,
    pub p: Metric,
    pub d: Metric,
    pub c: Metric,
    /// Base point; only the half-plane and unified evaluations use it.
    pub alpha: C64,
}

impl Colligation {
    /// Assemble and validate shapes, coisometry (within `tol`) and `ind_-(D) = ind_-(C)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        t: CMat,
        f: CMat,
        g: CMat,
        h: CMat,
        p: Metric,
        d: Metric,
        c: Metric,
        alpha: C64,
        tol: f64,
    ) -> Result<Self> {
        let (np, nd, nc) = (p.dim(), d.dim(), c.dim());
        let shapes = [
            (&t, (np, np), "T"),
            (&f, (np, nd), "F"),
            (&g, (nc, np), "G"),
            (&h, (nc, nd), "H"),
        ];
        for (m, want, name) in shapes {
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        if d.ind_minus() != c.ind_minus() {
            return Err(Error::DimensionMismatch(format!(
                "ind_-(D) = {} differs from ind_-(C) = {}",
                d.ind_minus(),
                c.ind_minus()
            )));
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
        let defect = coisometry_defect(&col.block());
        if defect > tol {
            return Err(Error::NotCoisometric { defect });
        }
        Ok(col)
    }

    /// `S(z) = H` with an empty state space.
    pub fn constant(h: CMat, d: Metric, c: Metric, tol: f64) -> Result<Self> {
        let (nd, nc) = (d.dim(), c.dim());
        Self::new(
            CMat::zeros(0, 0),
            CMat::zeros(0, nd),
            CMat::zeros(nc, 0),
            h,
            Metric::euclidean(0),
            d,
            c,
            C64::new(1.0, 0.0),
            tol,
        )
    }

    /// The full block matrix as a map between the product metrics.
    pub fn block(&self) -> MetricMap {
        MetricMap {
            matrix: block2(&self.t, &self.f, &self.g, &self.h),
            domain: self.p.direct_sum(&self.d),
            codomain: self.p.direct_sum(&self.c),
        }
    }

    pub fn state_dim(&self) -> usize {
        self.p.dim()
    }

    /// `(I - lambda T)^{-1}` on the left of `rhs`.
    fn resolve(&self, lambda: C64, rhs: &CMat) -> Result<CMat> {
        let n = self.state_dim();
        let m = CMat::identity(n, n) - &self.t * lambda;
        solve(&m, rhs, || Error::SingularResolvent(format!("{lambda}")))
    }

    /// `G (I - lambda T)^{-1}`.
    fn observe(&self, lambda: C64) -> Result<CMat> {
        let n = self.state_dim();
        let m = CMat::identity(n, n) - &self.t * lambda;
        // x (I - lambda T) = G  <=>  (I - lambda T)^H x^H = G^H
        Ok(solve(&m.adjoint(), &self.g.adjoint(), || {
            Error::SingularResolvent(format!("{lambda}"))
        })?
        .adjoint())
    }

    /// `S(z) = H + z G (I - z T)^{-1} F`.
    pub fn eval_disk(&self, z: C64) -> Result<CMat> {
        Ok(&self.h + &self.g * self.resolve(z, &self.f)? * z)
    }

    /// Cayley variable `b(z) = (z - alpha)/(z + conj(alpha))`.
    pub fn cayley(&self, z: C64) -> Result<C64> {
        let den = z + self.alpha.conj();
        if den.norm() == 0.0 {
            return Err(Error::DomainViolation(format!(
                "{z} is the reflection of the base point"
            )));
        }
        Ok((z - self.alpha) / den)
    }

    /// `S(z) = H + b(z) G (I - b(z) T)^{-1} F`.
    ///
    /// No domain check beyond `z != -conj(alpha)`, so boundary values on the
    /// imaginary axis are available.
    pub fn eval_halfplane(&self, z: C64) -> Result<CMat> {
        self.eval_disk(self.cayley(z)?)
    }

    pub fn eval(&self, setting: &Setting, z: C64) -> Result<CMat> {
        match setting {
            Setting::Disk => self.eval_disk(z),
            Setting::HalfPlane => self.eval_halfplane(z),
            Setting::Rho(ab) => crate::unified::eval_unified(self, ab, z),
        }
    }

    /// `S(w)^[*] = J_D S(w)^H J_C`.
    pub fn adjoint_value(&self, s: &CMat) -> CMat {
        self.d.apply_left(&self.c.apply_right(&s.adjoint()))
    }

    /// Point evaluation `C_z : P -> C` of the state space.
    ///
    /// Disk: `G (I - zT)^{-1}`; half-plane:
    /// `(alpha + conj(alpha))/(z + conj(alpha)) C_alpha (I - b(z) T)^{-1}` with
    /// `C_alpha = G / sqrt(2 pi k)`, `k = 2 Re alpha`.
    pub fn point_evaluation(&self, setting: &Setting, z: C64) -> Result<CMat> {
        match setting {
            Setting::Disk => self.observe(z),
            Setting::HalfPlane => {
                let k = 2.0 * self.alpha.re;
                if k <= 0.0 {
                    return Err(Error::DomainViolation(format!(
                        "base point {} must have Re > 0",
                        self.alpha
                    )));
                }
                let b = self.cayley(z)?;
                let factor = C64::new(k, 0.0) / (z + self.alpha.conj()) / (2.0 * PI * k).sqrt();
                Ok(self.observe(b)? * factor)
            }
            Setting::Rho(ab) => crate::unified::point_evaluation_unified(self, ab, z),
        }
    }

    /// Kernel from its defining formula `(I - S(z) S(w)^[*]) / d(z, w)`.
    pub fn kernel_direct(&self, setting: &Setting, z: C64, w: C64) -> Result<CMat> {
        let den = setting.kernel_denominator(z, w);
        if den.norm() == 0.0 {
            return Err(Error::DomainViolation(format!(
                "kernel denominator vanishes at ({z}, {w})"
            )));
        }
        let sz = self.eval(setting, z)?;
        let sw = self.eval(setting, w)?;
        let n = self.c.dim();
        Ok((CMat::identity(n, n) - sz * self.adjoint_value(&sw)) / den)
    }

    /// Kernel through the state space, `C_z C_w^[*] = C_z J_P C_w^H J_C`.
    pub fn kernel_colligation(&self, setting: &Setting, z: C64, w: C64) -> Result<CMat> {
        let cz = self.point_evaluation(setting, z)?;
        let cw = self.point_evaluation(setting, w)?;
        Ok(cz * self.p.apply_left(&self.c.apply_right(&cw.adjoint())))
    }

    /// Negative squares of `K_S` on the given points, using the defining formula.
    pub fn negative_squares(
        &self,
        setting: &Setting,
        choice: &PointChoice,
        tol: f64,
    ) -> Result<usize> {
        negative_squares(
            |z, w| self.kernel_direct(setting, z, w),
            choice,
            &self.c,
            tol,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_diff, re};

    fn scalar(x: f64) -> CMat {
        CMat::from_element(1, 1, re(x))
    }

    fn shift() -> Colligation {
        let e = Metric::euclidean(1);
        Colligation::new(
            scalar(0.0),
            scalar(1.0),
            scalar(1.0),
            scalar(0.0),
            e.clone(),
            e.clone(),
            e,
            re(1.0),
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn shift_realizes_z() {
        let s = shift();
        let z = c(0.3, -0.2);
        assert!((s.eval_disk(z).unwrap()[(0, 0)] - z).norm() < 1e-15);
        let w = c(-0.5, 0.1);
        assert!((s.kernel_direct(&Setting::Disk, z, w).unwrap()[(0, 0)] - re(1.0)).norm() < 1e-15);
        assert!(
            (s.kernel_colligation(&Setting::Disk, z, w).unwrap()[(0, 0)] - re(1.0)).norm() < 1e-15
        );
    }

    #[test]
    fn empty_state_space_is_constant() {
        let h = CMat::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)]);
        let s = Colligation::constant(h.clone(), Metric::euclidean(2), Metric::euclidean(2), 1e-12)
            .unwrap();
        for z in [c(0.2, 0.1), c(0.9, -0.3)] {
            assert_eq!(s.eval_disk(z).unwrap(), h);
            assert!(s
                .kernel_direct(&Setting::HalfPlane, z, z)
                .unwrap()
                .iter()
                .all(|x| x.norm() < 1e-15));
        }
    }

    #[test]
    fn base_point_gives_h() {
        let mut s = shift();
        s.alpha = c(0.7, 0.4);
        assert_eq!(s.eval_halfplane(s.alpha).unwrap(), s.h);
        let k_aa = s
            .kernel_colligation(&Setting::HalfPlane, s.alpha, s.alpha)
            .unwrap();
        let c_alpha = s.g.unscale((2.0 * PI * 2.0 * s.alpha.re).sqrt());
        assert!(max_diff(&k_aa, &(&c_alpha * c_alpha.adjoint())) < 1e-15);
    }

    #[test]
    fn rejects_non_coisometric_blocks() {
        let e = Metric::euclidean(1);
        let r = Colligation::new(
            scalar(0.5),
            scalar(1.0),
            scalar(1.0),
            scalar(0.0),
            e.clone(),
            e.clone(),
            e,
            re(1.0),
            1e-12,
        );
        assert!(matches!(r, Err(Error::NotCoisometric { .. })));
    }

    #[test]
    fn singular_resolvent_surfaces() {
        let e = Metric::euclidean(1);
        // T = 1, F = 0, G = 0, H = 1 is unitary; I - zT is singular at z = 1.
        let s = Colligation::new(
            scalar(1.0),
            scalar(0.0),
            scalar(0.0),
            scalar(1.0),
            e.clone(),
            e.clone(),
            e,
            re(1.0),
            1e-12,
        )
        .unwrap();
        assert!(matches!(
            s.eval_disk(re(1.0)),
            Err(Error::SingularResolvent(_))
        ));
    }
}
