//! Scalar rational functions and the generalized difference quotients
//! `R(a, b, alpha)` / `R(b, a, alpha)` acting on them.

use serde::{Deserialize, Serialize};

use super::AbPair;
use crate::error::{Error, Result};
use crate::kernel_spaces::AbRole;
use crate::linalg::C64;
use crate::poly::Poly;

/// `num / den` with polynomial numerator and denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rational {
    pub num: Poly,
    pub den: Poly,
}

impl Rational {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(
                "denominator polynomial is zero".into(),
            ));
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::constant(C64::new(1.0, 0.0)),
        }
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let d = self.den.eval(z);
        if d.norm() == 0.0 {
            return Err(Error::ZeroDenominator(format!("pole at {z}")));
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// `F(sigma(z)) / a(z)` for a function `F` of the disk variable.
    ///
    /// With `m = max(deg N, deg D)`, `N(b/a) / D(b/a) = N~ / D~` where
    /// `N~ = sum n_k b^k a^(m-k)` (likewise `D~`), so the result is `N~ / (a D~)`.
    pub fn compose_sigma(&self, ab: &AbPair) -> Self {
        let m = self.num.degree().max(self.den.degree());
        let homogenize = |p: &Poly| {
            p.coeffs()
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (k, &c)| {
                    acc.add(&pow(&ab.b, k).mul(&pow(&ab.a, m - k)).scale(c))
                })
        };
        Self {
            num: homogenize(&self.num),
            den: ab.a.mul(&homogenize(&self.den)),
        }
    }
}

fn pow(p: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::constant(C64::new(1.0, 0.0)), |acc, _| acc.mul(p))
}

/// `(R(a,b,alpha) f)(z) = (a(z) f(z) - a(alpha) f(alpha)) / (a(alpha) b(z) - b(alpha) a(z))`,
/// and the same with `a` and `b` exchanged for `R(b,a,alpha)`.
///
/// Numerator and denominator both vanish at `z = alpha`; the common factor
/// `z - alpha` is removed by synthetic division, so the result is finite there.
pub fn r_ab_apply(ab: &AbPair, role: AbRole, f: &Rational, alpha: C64) -> Result<Rational> {
    let (p, q) = match role {
        AbRole::Rab => (&ab.a, &ab.b),
        AbRole::Rba => (&ab.b, &ab.a),
    };
    let f_alpha = f.eval(alpha)?;
    let (pa, qa) = (p.eval(alpha), q.eval(alpha));
    // p f - p(alpha) f(alpha) = (p N - p(alpha) f(alpha) D) / D
    let top = p.mul(&f.num).sub(&f.den.scale(pa * f_alpha));
    let bottom = q.scale(pa).sub(&p.scale(qa));
    if bottom.is_zero() {
        return Err(Error::ZeroDenominator(
            "a(alpha) b - b(alpha) a vanishes identically".into(),
        ));
    }
    let (top_q, _) = top.div_linear(alpha);
    let (bottom_q, _) = bottom.div_linear(alpha);
    if bottom_q.is_zero() {
        return Err(Error::ZeroDenominator(
            "a(alpha) b - b(alpha) a is constant".into(),
        ));
    }
    Ok(Rational {
        num: top_q,
        den: f.den.mul(&bottom_q),
    })
}

/// `max |a(alpha) R(b,a,alpha) f + b(alpha) R(a,b,alpha) f + f|` over `points`.
pub fn resolvent_sum_residual(
    ab: &AbPair,
    f: &Rational,
    alpha: C64,
    points: &[C64],
) -> Result<f64> {
    let rab = r_ab_apply(ab, AbRole::Rab, f, alpha)?;
    let rba = r_ab_apply(ab, AbRole::Rba, f, alpha)?;
    let (aa, ba) = (ab.a.eval(alpha), ab.b.eval(alpha));
    let mut worst = 0.0_f64;
    for &z in points {
        let r = aa * rba.eval(z)? + ba * rab.eval(z)? + f.eval(z)?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Residual of the transport law `R(a,b,alpha) f = (R_{sigma(alpha)} F)(sigma(z)) / (a(alpha) a(z))`
/// for `f = F(sigma(z)) / a(z)`, evaluated at `points`.
pub fn transport_law_residual(
    ab: &AbPair,
    big_f: &Rational,
    alpha: C64,
    points: &[C64],
) -> Result<f64> {
    let f = big_f.compose_sigma(ab);
    let lhs = r_ab_apply(ab, AbRole::Rab, &f, alpha)?;
    let s_alpha = ab.sigma(alpha)?;
    let disk = AbPair::disk();
    let quotient = r_ab_apply(&disk, AbRole::Rab, big_f, s_alpha)?;
    let aa = ab.a.eval(alpha);
    let mut worst = 0.0_f64;
    for &z in points {
        let rhs = quotient.eval(ab.sigma(z)?)? / (aa * ab.a.eval(z));
        worst = worst.max((lhs.eval(z)? - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, re};
    use crate::rng::SplitMix64;
    use crate::unified::Region;

    fn random_poly(rng: &mut SplitMix64, deg: usize) -> Poly {
        Poly::new((0..=deg).map(|_| rng.complex_normal()).collect())
    }

    fn random_pair(rng: &mut SplitMix64) -> AbPair {
        loop {
            let a = Poly::new(vec![
                c(2.0, 0.0) + rng.complex_normal() * 0.3,
                rng.complex_normal() * 0.3,
            ]);
            let b = Poly::new(vec![
                rng.complex_normal() * 0.3,
                c(1.0, 0.0) + rng.complex_normal() * 0.3,
                rng.complex_normal() * 0.2,
            ]);
            if let Ok(p) = AbPair::new(
                a,
                b,
                Region::Rect {
                    re: (-3.0, 3.0),
                    im: (-3.0, 3.0),
                },
            ) {
                return p;
            }
        }
    }

    #[test]
    fn disk_pair_gives_difference_quotient() {
        let f = Rational::new(
            Poly::from_real(&[1.0, 2.0, 3.0]),
            Poly::from_real(&[2.0, -1.0]),
        )
        .unwrap();
        let alpha = c(0.2, 0.1);
        let r = r_ab_apply(&AbPair::disk(), AbRole::Rab, &f, alpha).unwrap();
        for z in [c(0.5, -0.3), c(-0.4, 0.2)] {
            let want = (f.eval(z).unwrap() - f.eval(alpha).unwrap()) / (z - alpha);
            assert!((r.eval(z).unwrap() - want).norm() < 1e-13);
        }
        // the removable singularity: value at alpha is f'(alpha)
        let h = 1e-6;
        let fd = (f.eval(alpha + h).unwrap() - f.eval(alpha - h).unwrap()) / (2.0 * h);
        assert!((r.eval(alpha).unwrap() - fd).norm() < 1e-8);
    }

    #[test]
    fn resolvent_sum_on_random_functions() {
        let mut rng = SplitMix64::new(90);
        for _ in 0..10 {
            let ab = random_pair(&mut rng);
            let f = Rational::new(
                random_poly(&mut rng, 3),
                Poly::new(vec![re(4.0), rng.complex_normal()]),
            )
            .unwrap();
            let alpha = rng.complex_in_disk(0.5);
            let pts: Vec<C64> = (0..50).map(|_| rng.complex_in_disk(1.0)).collect();
            assert!(resolvent_sum_residual(&ab, &f, alpha, &pts).unwrap() < 1e-10);
        }
    }

    #[test]
    fn transport_law_holds() {
        let mut rng = SplitMix64::new(91);
        let ab = AbPair::half_plane();
        for _ in 0..10 {
            let big_f = Rational::new(
                random_poly(&mut rng, 2),
                Poly::new(vec![re(3.0), rng.complex_normal()]),
            )
            .unwrap();
            let alpha = rng.complex_in_rect((0.5, 1.5), (-0.5, 0.5));
            let pts: Vec<C64> = (0..20)
                .map(|_| rng.complex_in_rect((0.2, 2.0), (-1.0, 1.0)))
                .collect();
            assert!(transport_law_residual(&ab, &big_f, alpha, &pts).unwrap() < 1e-10);
        }
    }

    #[test]
    fn compose_sigma_matches_pointwise() {
        let ab = AbPair::half_plane();
        let big_f = Rational::new(
            Poly::from_real(&[1.0, -2.0]),
            Poly::from_real(&[3.0, 1.0, 0.5]),
        )
        .unwrap();
        let f = big_f.compose_sigma(&ab);
        let z = c(0.7, 0.4);
        let want = big_f.eval(ab.sigma(z).unwrap()).unwrap() / ab.a.eval(z);
        assert!((f.eval(z).unwrap() - want).norm() < 1e-13);
    }
}
