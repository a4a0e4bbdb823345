//! Hardy-type reproducing kernels, kernel-section functions and their resolvents.
//!
//! Three geometries share one representation: the unit disk with
//! `k(z, w) = 1/(1 - z conj(w))`, the right half-plane with
//! `k(z, w) = 1/(2 pi (z + conj(w)))`, and a general `(a, b)` pair with
//! `k(z, w) = 1/rho(z, w)`.

mod identities;
mod negsq;
mod section;

pub use identities::{check_identity, resolvent_identity_residual, Identity};
pub use negsq::{gram_matrix, negative_squares, PointChoice};
pub use section::{AbRole, RationalSection};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::unified::{AbPair, Zone};

#[derive(Debug, Clone, PartialEq)]
pub enum Setting {
    Disk,
    HalfPlane,
    Rho(AbPair),
}

impl Setting {
    /// Whether `z` lies in the open domain of the kernel space.
    pub fn contains(&self, z: C64) -> bool {
        match self {
            Setting::Disk => z.norm() < 1.0,
            Setting::HalfPlane => z.re > 0.0,
            Setting::Rho(ab) => ab.domain.contains(z) && ab.classify(z) == Zone::OmegaPlus,
        }
    }

    pub fn check(&self, z: C64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::DomainViolation(format!("{z}")))
        }
    }

    /// Denominator of the kernel: `1 - z conj(w)`, `2 pi (z + conj(w))` or `rho(z, w)`.
    pub fn kernel_denominator(&self, z: C64, w: C64) -> C64 {
        match self {
            Setting::Disk => C64::new(1.0, 0.0) - z * w.conj(),
            Setting::HalfPlane => (z + w.conj()) * (2.0 * PI),
            Setting::Rho(ab) => ab.rho(z, w),
        }
    }

    /// Kernel value without a domain check; `None` on a vanishing denominator.
    pub fn kernel_unchecked(&self, z: C64, w: C64) -> Option<C64> {
        let d = self.kernel_denominator(z, w);
        (d.norm() > 0.0).then(|| d.inv())
    }
}

/// The reproducing kernel of the setting at `(z, w)`, both points in the open domain.
pub fn hardy_kernel(setting: &Setting, z: C64, w: C64) -> Result<C64> {
    setting.check(z)?;
    setting.check(w)?;
    setting
        .kernel_unchecked(z, w)
        .ok_or_else(|| Error::DomainViolation(format!("kernel denominator vanishes at ({z}, {w})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, re};
    use crate::rng::SplitMix64;

    #[test]
    fn kernel_values() {
        assert_eq!(
            hardy_kernel(&Setting::Disk, re(0.0), c(0.3, 0.4)).unwrap(),
            re(1.0)
        );
        assert!(
            (hardy_kernel(&Setting::Disk, re(0.5), re(0.5)).unwrap() - re(4.0 / 3.0)).norm()
                < 1e-15
        );
        assert!(
            (hardy_kernel(&Setting::HalfPlane, re(1.0), re(1.0)).unwrap() - re(1.0 / (4.0 * PI)))
                .norm()
                < 1e-16
        );
        assert!(matches!(
            hardy_kernel(&Setting::HalfPlane, re(-1.0), re(1.0)),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            hardy_kernel(&Setting::Disk, re(1.0), re(0.0)),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn kernels_are_hermitian() {
        let mut rng = SplitMix64::new(2);
        for setting in [
            Setting::Disk,
            Setting::HalfPlane,
            Setting::Rho(AbPair::half_plane()),
        ] {
            for _ in 0..50 {
                let (z, w) = match setting {
                    Setting::Disk => (rng.complex_in_disk(0.9), rng.complex_in_disk(0.9)),
                    _ => (
                        rng.complex_in_rect((0.1, 1.9), (-1.9, 1.9)),
                        rng.complex_in_rect((0.1, 1.9), (-1.9, 1.9)),
                    ),
                };
                let k1 = hardy_kernel(&setting, z, w).unwrap();
                let k2 = hardy_kernel(&setting, w, z).unwrap();
                assert_eq!(k1, k2.conj());
            }
        }
    }
}
