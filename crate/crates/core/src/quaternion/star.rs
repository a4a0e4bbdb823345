//! Pointwise evaluation of `*`-products and the `*`-inverse of `I - pA`.

use super::{QMatrix, Quaternion, SlicePowerSeries};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Stem components of a left slice function at `p = x + I y`:
/// `f(x + I y) = alpha + I beta`, recovered from `f(p)` and `f(conj p)`.
pub fn left_components(fp: &QMatrix, fpbar: &QMatrix, unit: Quaternion) -> (QMatrix, QMatrix) {
    let alpha = (fp + fpbar).scale(0.5);
    let beta = (fp - fpbar).scale_left(-unit * 0.5);
    (alpha, beta)
}

/// Stem components of a right slice function: `f(x + I y) = alpha + beta I`.
pub fn right_components(fp: &QMatrix, fpbar: &QMatrix, unit: Quaternion) -> (QMatrix, QMatrix) {
    let alpha = (fp + fpbar).scale(0.5);
    let beta = (fp - fpbar).scale_right(-unit * 0.5);
    (alpha, beta)
}

/// `(f * g)(x + I y) = (alpha gamma - beta delta) + I (alpha delta + beta gamma)`.
pub fn star_left<F, G>(f: F, g: G, p: Quaternion) -> Result<QMatrix>
where
    F: Fn(Quaternion) -> Result<QMatrix>,
    G: Fn(Quaternion) -> Result<QMatrix>,
{
    let (_, unit) = p.slice();
    let (a, b) = left_components(&f(p)?, &f(p.conj())?, unit);
    let (c, d) = left_components(&g(p)?, &g(p.conj())?, unit);
    let re = &(&a * &c) - &(&b * &d);
    let im = &(&a * &d) + &(&b * &c);
    Ok(&re + &im.scale_left(unit))
}

/// Right-sided product: `(f *_r g)(x + I y) = (alpha gamma - beta delta) + (alpha delta + beta gamma) I`.
pub fn star_right<F, G>(f: F, g: G, r: Quaternion) -> Result<QMatrix>
where
    F: Fn(Quaternion) -> Result<QMatrix>,
    G: Fn(Quaternion) -> Result<QMatrix>,
{
    let (_, unit) = r.slice();
    let (a, b) = right_components(&f(r)?, &f(r.conj())?, unit);
    let (c, d) = right_components(&g(r)?, &g(r.conj())?, unit);
    let re = &(&a * &c) - &(&b * &d);
    let im = &(&a * &d) + &(&b * &c);
    Ok(&re + &im.scale_right(unit))
}

/// `*_r` through the duality `(f *_r g)(r) = ((g# * f#)(conj r))^H` with `h#(p) = h(conj p)^H`.
pub fn star_right_dual<F, G>(f: F, g: G, r: Quaternion) -> Result<QMatrix>
where
    F: Fn(Quaternion) -> Result<QMatrix>,
    G: Fn(Quaternion) -> Result<QMatrix>,
{
    let f_sharp = |p: Quaternion| f(p.conj()).map(|m| m.adjoint());
    let g_sharp = |p: Quaternion| g(p.conj()).map(|m| m.adjoint());
    Ok(star_left(g_sharp, f_sharp, r.conj())?.adjoint())
}

/// How [`star_eval`] computes `(f * g)(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarRule {
    /// Cauchy product of the coefficients, then evaluation.
    Series,
    /// Slice components of both factors.
    SliceComponents,
    /// `f(p) g(f(p)^{-1} p f(p))` for scalar series, with the series rule when `f(p) = 0`.
    Conjugation,
}

pub fn star_eval(
    f: &SlicePowerSeries,
    g: &SlicePowerSeries,
    p: Quaternion,
    rule: StarRule,
) -> Result<QMatrix> {
    if f.center() != g.center() {
        return Err(Error::CenterMismatch(f.center(), g.center()));
    }
    match rule {
        StarRule::Series => f.star_product(g)?.eval(p),
        StarRule::SliceComponents => star_left(|q| f.eval(q), |q| g.eval(q), p),
        StarRule::Conjugation => {
            if f.shape() != (1, 1) || g.shape() != (1, 1) {
                return Err(Error::UnsupportedFunction(
                    "the conjugation rule needs scalar series".into(),
                ));
            }
            let fp = f.eval(p)?[(0, 0)];
            if fp.norm() == 0.0 {
                return f.star_product(g)?.eval(p);
            }
            let moved = fp.inv()? * p * fp;
            Ok(QMatrix::scalar(fp * g.eval(moved)?[(0, 0)]))
        }
    }
}

/// `G * (I - pA)^{-*} = (G - conj(p) G A)(I - 2 Re(p) A + |p|^2 A^2)^{-1}`.
pub fn star_inverse_resolvent(a: &QMatrix, g: &QMatrix, p: Quaternion) -> Result<QMatrix> {
    let n = a.nrows();
    if a.ncols() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch("star resolvent shapes".into()));
    }
    let a2 = a * a;
    let id = QMatrix::identity(n);
    let den = &(&id - &a.scale(2.0 * p.re())) + &a2.scale(p.norm_sqr());
    let num = g - &(g * a).scale_left(p.conj());
    num.solve_right(&den, || Error::SingularSResolvent(p.to_string()))
}

/// Value at `p = x + I y` of an intrinsic function given on the complex plane:
/// `f(z) = u + i v` lifts to `u + I v`.
pub fn lift_intrinsic(f: impl Fn(C64) -> Result<C64>, p: Quaternion) -> Result<Quaternion> {
    let (z, unit) = p.slice();
    Ok(Quaternion::on_slice(f(z)?, unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    type Q = Quaternion;

    fn random_series(rng: &mut SplitMix64, center: f64, deg: usize) -> SlicePowerSeries {
        let c: Vec<Q> = (0..=deg).map(|_| Q::random(rng)).collect();
        SlicePowerSeries::scalar(center, &c, 2.0).unwrap()
    }

    fn random_point(rng: &mut SplitMix64, center: f64, r: f64) -> Q {
        let h = Q::random(rng);
        Q::real(center) + h * (r * rng.next_f64() / h.norm())
    }

    #[test]
    fn three_rules_agree() {
        let mut rng = SplitMix64::new(220);
        for _ in 0..20 {
            let f = random_series(&mut rng, 0.5, 4);
            let g = random_series(&mut rng, 0.5, 3);
            let p = random_point(&mut rng, 0.5, 1.2);
            let s = star_eval(&f, &g, p, StarRule::Series).unwrap();
            let c = star_eval(&f, &g, p, StarRule::SliceComponents).unwrap();
            let k = star_eval(&f, &g, p, StarRule::Conjugation).unwrap();
            assert!(s.max_diff(&c) < 1e-9, "{}", s.max_diff(&c));
            assert!(s.max_diff(&k) < 1e-9, "{}", s.max_diff(&k));
        }
    }

    #[test]
    fn intrinsic_left_factor_is_pointwise() {
        let mut rng = SplitMix64::new(221);
        let f = SlicePowerSeries::scalar(0.0, &[Q::real(1.0), Q::real(-0.5), Q::real(0.25)], 3.0)
            .unwrap();
        let g = random_series(&mut rng, 0.0, 4);
        for _ in 0..20 {
            let p = random_point(&mut rng, 0.0, 1.5);
            let star = star_eval(&f, &g, p, StarRule::SliceComponents).unwrap();
            let pointwise = &f.eval(p).unwrap() * &g.eval(p).unwrap();
            assert!(star.max_diff(&pointwise) < 1e-12);
        }
    }

    #[test]
    fn right_product_routes_agree() {
        let mut rng = SplitMix64::new(222);
        // right slice functions: coefficients on the left
        let right = |c: Vec<QMatrix>| {
            move |r: Q| -> Result<QMatrix> {
                let mut acc = QMatrix::zeros(c[0].nrows(), c[0].ncols());
                let mut pow = Q::ONE;
                for m in &c {
                    acc = &acc + &m.scale_right(pow);
                    pow = pow * r;
                }
                Ok(acc)
            }
        };
        for _ in 0..10 {
            let fc: Vec<QMatrix> = (0..4).map(|_| QMatrix::random(&mut rng, 2, 3)).collect();
            let gc: Vec<QMatrix> = (0..3).map(|_| QMatrix::random(&mut rng, 3, 2)).collect();
            // coefficient convolution oracle
            let mut hc = vec![QMatrix::zeros(2, 2); 6];
            for (i, a) in fc.iter().enumerate() {
                for (j, b) in gc.iter().enumerate() {
                    hc[i + j] = &hc[i + j] + &(a * b);
                }
            }
            let r = random_point(&mut rng, 0.0, 0.9);
            let want = right(hc)(r).unwrap();
            let a = star_right(right(fc.clone()), right(gc.clone()), r).unwrap();
            let b = star_right_dual(right(fc), right(gc), r).unwrap();
            assert!(a.max_diff(&want) < 1e-10);
            assert!(b.max_diff(&want) < 1e-10);
        }
    }

    #[test]
    fn star_resolvent_special_cases() {
        let mut rng = SplitMix64::new(223);
        let a = QMatrix::random(&mut rng, 3, 3).scale(0.2);
        let g = QMatrix::random(&mut rng, 2, 3);
        let p = Q::random(&mut rng);
        assert_eq!(
            star_inverse_resolvent(&QMatrix::zeros(3, 3), &g, p)
                .unwrap()
                .max_diff(&g),
            0.0
        );
        let t = Q::real(0.7);
        let direct = g
            .solve_right(&(&QMatrix::identity(3) - &a.scale(0.7)), || {
                Error::SingularMetric
            })
            .unwrap();
        assert!(star_inverse_resolvent(&a, &g, t).unwrap().max_diff(&direct) < 1e-12);
    }

    #[test]
    fn star_resolvent_matches_geometric_series() {
        let mut rng = SplitMix64::new(224);
        for _ in 0..10 {
            let a = QMatrix::random(&mut rng, 3, 3);
            let a = a.scale(1.0 / (a.embed().norm() * 1.0));
            let g = QMatrix::random(&mut rng, 2, 3);
            let p = random_point(&mut rng, 0.0, 0.5);
            let series = SlicePowerSeries::geometric(0.0, &a, 32, 1.0).unwrap();
            let gs = SlicePowerSeries::constant(0.0, g.clone())
                .star_product(&series)
                .unwrap();
            let want = gs.eval(p).unwrap();
            assert!(star_inverse_resolvent(&a, &g, p).unwrap().max_diff(&want) < 1e-8);
            // (I - pA) * (I - pA)^{-*} = I through the series oracle
            let lin = SlicePowerSeries::new(0.0, vec![QMatrix::identity(3), -&a], 1.0).unwrap();
            let prod = lin.star_product(&series).unwrap().eval(p).unwrap();
            assert!(prod.max_diff(&QMatrix::identity(3)) < 1e-8);
        }
    }

    #[test]
    fn lift_of_intrinsic_function() {
        let p = Q::new(0.3, 0.1, -0.4, 0.2);
        let v = lift_intrinsic(|z| Ok(z * z), p).unwrap();
        assert!((v - p * p).norm() < 1e-15);
    }
}
