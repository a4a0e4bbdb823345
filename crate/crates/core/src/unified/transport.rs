//! Transport to the disk: `f(z) = F(sigma(z)) / a(z)`, recovering `F` through a
//! local inverse of `sigma`.

use super::{AbPair, Rational};
use crate::error::{Error, Result};
use crate::linalg::C64;

const NEWTON_TOL: f64 = 1e-12;
const HOMOTOPY_STEPS: usize = 16;
const NEWTON_ITERS: usize = 50;

/// Local inverse of `sigma` near a base point.
#[derive(Debug, Clone)]
pub struct SigmaInverse<'a> {
    ab: &'a AbPair,
    base: C64,
    base_value: C64,
}

impl<'a> SigmaInverse<'a> {
    pub fn new(ab: &'a AbPair, base: C64) -> Result<Self> {
        let base_value = ab.sigma(base)?;
        let d = sigma_derivative(ab, base)?;
        if d.norm() < 1e-10 {
            return Err(Error::NonInvertibleSigma(format!("sigma'({base}) = {d}")));
        }
        Ok(Self {
            ab,
            base,
            base_value,
        })
    }

    /// `z` with `sigma(z) = u`, found by Newton continuation along the segment from
    /// `sigma(base)` to `u`; for real data, falls back to bisection on the real axis.
    pub fn solve(&self, u: C64) -> Result<C64> {
        match self.newton(u) {
            Ok(z) => Ok(z),
            Err(e) => self.real_bisection(u).ok_or(e),
        }
    }

    fn newton(&self, u: C64) -> Result<C64> {
        let mut z = self.base;
        for step in 1..=HOMOTOPY_STEPS {
            let target =
                self.base_value + (u - self.base_value) * (step as f64 / HOMOTOPY_STEPS as f64);
            let last = step == HOMOTOPY_STEPS;
            let mut converged = false;
            for _ in 0..NEWTON_ITERS {
                let r = self.ab.sigma(z)? - target;
                let d = sigma_derivative(self.ab, z)?;
                if d.norm() < 1e-14 {
                    return Err(Error::NonInvertibleSigma(format!(
                        "sigma' vanishes near {z}"
                    )));
                }
                let dz = r / d;
                z -= dz;
                if dz.norm() <= NEWTON_TOL * (1.0 + z.norm()) {
                    converged = true;
                    break;
                }
                if !last && r.norm() < 1e-6 {
                    converged = true;
                    break;
                }
            }
            if !converged || !z.is_finite() {
                return Err(Error::NonInvertibleSigma(format!(
                    "Newton did not converge for sigma(z) = {u}"
                )));
            }
        }
        if (self.ab.sigma(z)? - u).norm() > 1e-10 * (1.0 + u.norm()) {
            return Err(Error::NonInvertibleSigma(format!(
                "no local preimage of {u}"
            )));
        }
        Ok(z)
    }

    fn real_bisection(&self, u: C64) -> Option<C64> {
        if !self.ab.is_intrinsic() || u.im != 0.0 || self.base.im != 0.0 {
            return None;
        }
        let g = |x: f64| self.ab.sigma(C64::new(x, 0.0)).ok().map(|s| s.re - u.re);
        let g0 = g(self.base.re)?;
        let mut width = 1e-3;
        let bracket = loop {
            if width > 1e3 {
                return None;
            }
            let (l, h) = (self.base.re - width, self.base.re + width);
            if let Some(gl) = g(l) {
                if gl * g0 <= 0.0 {
                    break (l, self.base.re);
                }
            }
            if let Some(gh) = g(h) {
                if gh * g0 <= 0.0 {
                    break (self.base.re, h);
                }
            }
            width *= 2.0;
        };
        let (mut lo, mut hi) = bracket;
        let glo = g(lo)?;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid)? * glo <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= NEWTON_TOL * (1.0 + mid.abs()) {
                break;
            }
        }
        Some(C64::new(0.5 * (lo + hi), 0.0))
    }
}

/// `sigma'(z) = (b'(z) a(z) - b(z) a'(z)) / a(z)^2`.
pub fn sigma_derivative(ab: &AbPair, z: C64) -> Result<C64> {
    let a = ab.a.eval(z);
    if a.norm() == 0.0 {
        return Err(Error::ZeroDenominator(format!("a({z}) = 0")));
    }
    Ok((ab.b.derivative().eval(z) * a - ab.b.eval(z) * ab.a.derivative().eval(z)) / (a * a))
}

/// `F(u) = a(z) f(z)` at `z = sigma^{-1}(u)`, the disk-side function of `f`.
#[derive(Debug, Clone)]
pub struct DiskTransport<'a> {
    f: Rational,
    inverse: SigmaInverse<'a>,
}

impl DiskTransport<'_> {
    pub fn eval(&self, u: C64) -> Result<C64> {
        let z = self.inverse.solve(u)?;
        Ok(self.inverse.ab.a.eval(z) * self.f.eval(z)?)
    }

    /// `max |F(sigma(z)) / a(z) - f(z)|` over `points`.
    pub fn round_trip_residual(&self, points: &[C64]) -> Result<f64> {
        let ab = self.inverse.ab;
        let mut worst = 0.0_f64;
        for &z in points {
            let back = self.eval(ab.sigma(z)?)? / ab.a.eval(z);
            worst = worst.max((back - self.f.eval(z)?).norm());
        }
        Ok(worst)
    }
}

/// Transport `f` to the disk using a `sigma`-inverse seeded at `base`.
pub fn transport_to_disk<'a>(ab: &'a AbPair, f: &Rational, base: C64) -> Result<DiskTransport<'a>> {
    Ok(DiskTransport {
        f: f.clone(),
        inverse: SigmaInverse::new(ab, base)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, re};
    use crate::poly::Poly;
    use crate::rng::SplitMix64;
    use crate::unified::Region;

    #[test]
    fn reciprocal_of_a_maps_to_one() {
        let ab = AbPair::half_plane();
        let f = Rational::new(Poly::constant(re(1.0)), ab.a.clone()).unwrap();
        let t = transport_to_disk(&ab, &f, re(1.0)).unwrap();
        for u in [c(0.1, 0.2), c(-0.3, 0.0), c(0.0, -0.5)] {
            assert!((t.eval(u).unwrap() - re(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn disk_pair_is_identity() {
        let ab = AbPair::disk();
        let f = Rational::new(Poly::from_real(&[1.0, 2.0]), Poly::from_real(&[3.0, -1.0])).unwrap();
        let t = transport_to_disk(&ab, &f, re(0.0)).unwrap();
        let u = c(0.3, -0.4);
        assert!((t.eval(u).unwrap() - f.eval(u).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn rho_section_maps_to_disk_section() {
        // 1/rho(z, mu) = F(sigma(z))/a(z) with F(u) = 1/(conj(a(mu)) (1 - u conj(sigma(mu)))).
        let ab = AbPair::half_plane();
        let mut rng = SplitMix64::new(95);
        for _ in 0..10 {
            let mu = rng.complex_in_rect((0.3, 1.5), (-1.0, 1.0));
            let f = Rational::new(
                Poly::constant(re(1.0)),
                ab.a.scale(ab.a.eval(mu).conj())
                    .sub(&ab.b.scale(ab.b.eval(mu).conj())),
            )
            .unwrap();
            let t = transport_to_disk(&ab, &f, re(1.0)).unwrap();
            let sm = ab.sigma(mu).unwrap();
            let u = rng.complex_in_disk(0.6);
            let want = re(1.0) / (ab.a.eval(mu).conj() * (re(1.0) - u * sm.conj()));
            assert!((t.eval(u).unwrap() - want).norm() < 1e-10);
            let pts: Vec<C64> = (0..10)
                .map(|_| rng.complex_in_rect((0.3, 2.0), (-1.0, 1.0)))
                .collect();
            assert!(t.round_trip_residual(&pts).unwrap() < 1e-9);
        }
    }

    #[test]
    fn critical_point_is_reported() {
        // sigma(z) = z^2 has sigma'(0) = 0.
        let ab = AbPair::new(
            Poly::from_real(&[1.0]),
            Poly::from_real(&[0.0, 0.0, 1.0]),
            Region::Disk {
                center: (0.0, 0.0),
                radius: 2.0,
            },
        )
        .unwrap();
        let f = Rational::polynomial(Poly::from_real(&[1.0]));
        assert!(matches!(
            transport_to_disk(&ab, &f, re(0.0)),
            Err(Error::NonInvertibleSigma(_))
        ));
    }

    #[test]
    fn real_fallback_on_intrinsic_pair() {
        let ab = AbPair::new(
            Poly::from_real(&[2.0, 0.5]),
            Poly::from_real(&[0.0, 1.0, 0.3]),
            Region::Disk {
                center: (0.0, 0.0),
                radius: 3.0,
            },
        )
        .unwrap();
        let inv = SigmaInverse::new(&ab, re(0.2)).unwrap();
        let x = inv.real_bisection(re(0.25)).unwrap();
        assert!((ab.sigma(x).unwrap() - re(0.25)).norm() < 1e-10);
    }
}
