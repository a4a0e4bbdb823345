//! The `(a, b)` pair, its kernel `rho` and the region split it induces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use crate::poly::Poly;

pub const MAX_DEGREE: usize = 8;
/// Relative band around `|a| = |b|` classified as the boundary set.
pub const CLASSIFY_BAND: f64 = 1e-12;
const GRID_SIDE: usize = 32;

/// User-declared working domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Rect { re: (f64, f64), im: (f64, f64) },
    Disk { center: (f64, f64), radius: f64 },
}

impl Region {
    pub fn contains(&self, z: C64) -> bool {
        match *self {
            Region::Rect { re, im } => re.0 <= z.re && z.re <= re.1 && im.0 <= z.im && z.im <= im.1,
            Region::Disk { center, radius } => (z - C64::new(center.0, center.1)).norm() <= radius,
        }
    }

    /// Deterministic sample of `GRID_SIDE^2` points.
    pub fn grid(&self) -> Vec<C64> {
        let t = |k: usize| (k as f64 + 0.5) / GRID_SIDE as f64;
        let mut pts = Vec::with_capacity(GRID_SIDE * GRID_SIDE);
        for i in 0..GRID_SIDE {
            for j in 0..GRID_SIDE {
                pts.push(match *self {
                    Region::Rect { re, im } => {
                        C64::new(re.0 + (re.1 - re.0) * t(i), im.0 + (im.1 - im.0) * t(j))
                    }
                    Region::Disk { center, radius } => {
                        C64::new(center.0, center.1)
                            + C64::from_polar(radius * t(i), std::f64::consts::TAU * t(j))
                    }
                });
            }
        }
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    OmegaPlus,
    OmegaMinus,
    OmegaZero,
}

/// Pair of polynomials `(a, b)` with `rho(z, w) = a(z) conj(a(w)) - b(z) conj(b(w))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbPair {
    pub a: Poly,
    pub b: Poly,
    pub domain: Region,
}

impl AbPair {
    /// Validate degrees and check by grid sampling that both `Omega_+` and `Omega_-` are met.
    pub fn new(a: Poly, b: Poly, domain: Region) -> Result<Self> {
        if a.degree() > MAX_DEGREE || b.degree() > MAX_DEGREE {
            return Err(Error::Parse(format!(
                "a and b must have degree <= {MAX_DEGREE}"
            )));
        }
        if a.is_zero() {
            return Err(Error::ZeroDenominator("a is identically zero".into()));
        }
        let pair = Self { a, b, domain };
        let zones: Vec<Zone> = domain
            .grid()
            .into_par_iter()
            .map(|z| pair.classify(z))
            .collect();
        for (zone, name) in [(Zone::OmegaPlus, "Omega_+"), (Zone::OmegaMinus, "Omega_-")] {
            if !zones.contains(&zone) {
                return Err(Error::DomainViolation(format!(
                    "{name} has no sample in the declared domain"
                )));
            }
        }
        Ok(pair)
    }

    /// `a = 1, b = z` on the disk of radius 2.
    pub fn disk() -> Self {
        Self::new(
            Poly::from_real(&[1.0]),
            Poly::z(),
            Region::Disk {
                center: (0.0, 0.0),
                radius: 2.0,
            },
        )
        .expect("disk pair is valid")
    }

    /// `a = sqrt(2 pi)(z + 1)/2, b = sqrt(2 pi)(z - 1)/2`, giving `rho(z, w) = pi (z + conj w)`.
    pub fn half_plane() -> Self {
        let s = (2.0 * std::f64::consts::PI).sqrt() / 2.0;
        Self::new(
            Poly::from_real(&[s, s]),
            Poly::from_real(&[-s, s]),
            Region::Rect {
                re: (-2.0, 2.0),
                im: (-2.0, 2.0),
            },
        )
        .expect("half-plane pair is valid")
    }

    pub fn is_intrinsic(&self) -> bool {
        self.a.is_real() && self.b.is_real()
    }

    pub fn rho(&self, z: C64, w: C64) -> C64 {
        self.a.eval(z) * self.a.eval(w).conj() - self.b.eval(z) * self.b.eval(w).conj()
    }

    /// `delta(z, alpha) = b(z) a(alpha) - a(z) b(alpha)`.
    pub fn delta(&self, z: C64, alpha: C64) -> C64 {
        self.b.eval(z) * self.a.eval(alpha) - self.a.eval(z) * self.b.eval(alpha)
    }

    /// `sigma = b / a`.
    pub fn sigma(&self, z: C64) -> Result<C64> {
        let a = self.a.eval(z);
        if a.norm() == 0.0 || a.norm() <= 1e-300 {
            return Err(Error::ZeroDenominator(format!("a({z}) = 0")));
        }
        Ok(self.b.eval(z) / a)
    }

    pub fn classify(&self, z: C64) -> Zone {
        let (a2, b2) = (self.a.eval(z).norm_sqr(), self.b.eval(z).norm_sqr());
        let band = CLASSIFY_BAND * a2.max(b2).max(1.0);
        if a2 - b2 > band {
            Zone::OmegaPlus
        } else if b2 - a2 > band {
            Zone::OmegaMinus
        } else {
            Zone::OmegaZero
        }
    }

    /// `(a', b') = (a, b) U`, i.e. `a' = U11 a + U21 b`, `b' = U12 a + U22 b`.
    ///
    /// `rho` is unchanged whenever `U J0 U^H = J0` with `J0 = diag(1, -1)`.
    pub fn transform(&self, u: &CMat) -> Result<Self> {
        if u.shape() != (2, 2) {
            return Err(Error::DimensionMismatch(
                "J0-unitary transform must be 2x2".into(),
            ));
        }
        let a = self.a.scale(u[(0, 0)]).add(&self.b.scale(u[(1, 0)]));
        let b = self.a.scale(u[(0, 1)]).add(&self.b.scale(u[(1, 1)]));
        Ok(Self {
            a,
            b,
            domain: self.domain,
        })
    }
}

/// `U = diag(e^{i t1}, e^{i t2}) [[cosh s, sinh s], [sinh s, cosh s]] diag(e^{i t3}, e^{i t4})`.
pub fn j0_unitary(s: f64, phases: [f64; 4]) -> CMat {
    let d = |t1: f64, t2: f64| {
        CMat::from_row_slice(
            2,
            2,
            &[
                C64::from_polar(1.0, t1),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::from_polar(1.0, t2),
            ],
        )
    };
    let h = CMat::from_row_slice(
        2,
        2,
        &[
            C64::new(s.cosh(), 0.0),
            C64::new(s.sinh(), 0.0),
            C64::new(s.sinh(), 0.0),
            C64::new(s.cosh(), 0.0),
        ],
    );
    d(phases[0], phases[1]) * h * d(phases[2], phases[3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, diag_real, max_diff, re};
    use crate::rng::SplitMix64;

    #[test]
    fn canonical_pairs() {
        let d = AbPair::disk();
        let (z, w) = (c(0.3, 0.1), c(-0.2, 0.5));
        assert!((d.rho(z, w) - (re(1.0) - z * w.conj())).norm() < 1e-15);
        assert_eq!(d.sigma(z).unwrap(), z);
        assert_eq!(d.classify(re(0.0)), Zone::OmegaPlus);
        assert_eq!(d.classify(re(2.0)), Zone::OmegaMinus);
        assert_eq!(d.classify(C64::from_polar(1.0, 0.7)), Zone::OmegaZero);

        let h = AbPair::half_plane();
        let pi = std::f64::consts::PI;
        assert!((h.rho(z, w) - (z + w.conj()) * pi).norm() < 1e-14);
        assert_eq!(h.classify(re(1.0)), Zone::OmegaPlus);
        assert_eq!(h.classify(re(-1.0)), Zone::OmegaMinus);
        assert!(h.delta(z, z).norm() < 1e-15);
    }

    #[test]
    fn rejects_one_sided_regions() {
        let r = AbPair::new(
            Poly::from_real(&[3.0]),
            Poly::z(),
            Region::Disk {
                center: (0.0, 0.0),
                radius: 1.0,
            },
        );
        assert!(matches!(r, Err(Error::DomainViolation(_))));
    }

    #[test]
    fn j0_unitary_preserves_rho_and_zones() {
        let mut rng = SplitMix64::new(77);
        let j0 = diag_real(&[1.0, -1.0]);
        let h = AbPair::half_plane();
        for _ in 0..20 {
            let u = j0_unitary(
                rng.uniform(-1.0, 1.0),
                [0.0; 4].map(|_| rng.uniform(0.0, 6.3)),
            );
            assert!(max_diff(&(&u * &j0 * u.adjoint()), &j0) < 1e-12);
            let h2 = h.transform(&u).unwrap();
            for _ in 0..10 {
                let z = rng.complex_in_rect((-2.0, 2.0), (-2.0, 2.0));
                let w = rng.complex_in_rect((-2.0, 2.0), (-2.0, 2.0));
                assert!((h.rho(z, w) - h2.rho(z, w)).norm() < 1e-10);
                assert_eq!(h.classify(z), h2.classify(z));
            }
        }
    }
}
