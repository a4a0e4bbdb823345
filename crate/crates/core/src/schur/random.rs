//! Seeded random coisometric colligations.

use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::kernel_spaces::Setting;
use crate::linalg::{inverse, CMat, C64};
use crate::rng::SplitMix64;

use super::Colligation;

/// Shape of a random colligation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomShape {
    /// `dim P` and `ind_-(P)`.
    pub state: (usize, usize),
    /// `dim C` and `ind_-(C)`.
    pub output: (usize, usize),
    /// Positive directions of `D` beyond those matching `C`.
    pub extra_input: usize,
    /// Strength of the J-skew generator; larger values give larger entries.
    pub spread: f64,
    pub alpha: C64,
}

impl RandomShape {
    pub fn scalar(dim_p: usize, neg_p: usize) -> Self {
        Self {
            state: (dim_p, neg_p),
            output: (1, 0),
            extra_input: 0,
            spread: 0.6,
            alpha: C64::new(1.0, 0.0),
        }
    }
}

/// Cayley transform `(I - X)(I + X)^{-1}` of a J-skew `X = J Y`, `Y` skew-Hermitian.
fn j_unitary(rng: &mut SplitMix64, j: &Metric, spread: f64) -> Result<CMat> {
    let n = j.dim();
    let y = rng.complex_matrix(n, n);
    let y = (&y - y.adjoint()) * C64::new(0.5 * spread, 0.0);
    let x = j.apply_left(&y);
    let id = CMat::identity(n, n);
    Ok((&id - &x)
        * inverse(&(&id + &x), || {
            Error::SingularResolvent("Cayley transform".into())
        })?)
}

/// Draw a coisometric colligation with the requested inertia.
///
/// A J-unitary on `P [+] D` is drawn as a product of two Cayley transforms; the
/// metric of `D` lists the signs of `C` first, so the leading `dim P + dim C`
/// rows form a coisometry onto `P [+] C`.
pub fn random_colligation(rng: &mut SplitMix64, shape: RandomShape) -> Result<Colligation> {
    let (np, neg_p) = shape.state;
    let (nc, neg_c) = shape.output;
    if neg_p > np || neg_c > nc {
        return Err(Error::DimensionMismatch(
            "negative index exceeds dimension".into(),
        ));
    }
    let p = Metric::with_inertia(np - neg_p, neg_p);
    let c = Metric::with_inertia(nc - neg_c, neg_c);
    let d = c.direct_sum(&Metric::euclidean(shape.extra_input));
    let j = p.direct_sum(&d);
    let u = j_unitary(rng, &j, shape.spread)? * j_unitary(rng, &j, shape.spread)?;
    let nd = d.dim();
    let rows = np + nc;
    let m = u.rows(0, rows).into_owned();
    Colligation::new(
        m.view((0, 0), (np, np)).into_owned(),
        m.view((0, np), (np, nd)).into_owned(),
        m.view((np, 0), (nc, np)).into_owned(),
        m.view((np, np), (nc, nd)).into_owned(),
        p,
        d,
        c,
        shape.alpha,
        1e-9,
    )
}

/// Sample `count` points of the setting's working region where the resolvent
/// `(I - b T)^{-1}` stays bounded by `bound`.
pub fn sample_regular_points(
    rng: &mut SplitMix64,
    col: &Colligation,
    setting: &Setting,
    count: usize,
    bound: f64,
) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count + 100 {
            return Err(Error::SingularResolvent(
                "no regular sample points found".into(),
            ));
        }
        let z = match setting {
            Setting::Disk => rng.complex_in_disk(0.9),
            Setting::HalfPlane => rng.complex_in_rect((0.1, 3.0), (-2.0, 2.0)),
            Setting::Rho(ab) => {
                let z = ab.domain.grid()[rng.range(0, 1023)]
                    + C64::new(rng.uniform(-0.01, 0.01), rng.uniform(-0.01, 0.01));
                if !setting.contains(z) {
                    continue;
                }
                z
            }
        };
        match col.point_evaluation(setting, z) {
            Ok(cz) if cz.iter().all(|x| x.norm() < bound) => out.push(z),
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite::is_coisometric;
    use crate::linalg::max_diff;

    #[test]
    fn random_colligations_are_coisometric() {
        let mut rng = SplitMix64::new(50);
        for (np, neg) in [(1, 0), (3, 1), (5, 2), (8, 2)] {
            let shape = RandomShape {
                state: (np, neg),
                output: (2, 1),
                extra_input: 1,
                spread: 0.6,
                alpha: C64::new(1.0, 0.0),
            };
            let col = random_colligation(&mut rng, shape).unwrap();
            assert!(is_coisometric(&col.block(), 1e-10));
            assert_eq!(col.p.ind_minus(), neg);
            assert_eq!(col.d.ind_minus(), col.c.ind_minus());
        }
    }

    #[test]
    fn hilbert_colligation_is_contractive() {
        let mut rng = SplitMix64::new(51);
        let col = random_colligation(
            &mut rng,
            RandomShape {
                state: (4, 0),
                output: (2, 0),
                extra_input: 1,
                spread: 0.6,
                alpha: C64::new(1.0, 0.0),
            },
        )
        .unwrap();
        for _ in 0..50 {
            let z = rng.complex_in_disk(0.99);
            let s = col.eval_disk(z).unwrap();
            let gram = s.adjoint() * &s;
            let top = crate::indefinite::herm_eig(&gram, 1e-8)
                .unwrap()
                .values
                .last()
                .copied()
                .unwrap();
            assert!(top <= 1.0 + 1e-10, "|S(z)| = {}", top.sqrt());
        }
    }

    #[test]
    fn cayley_consistency() {
        let mut rng = SplitMix64::new(52);
        let mut col = random_colligation(&mut rng, RandomShape::scalar(3, 1)).unwrap();
        col.alpha = C64::new(0.7, -0.3);
        for _ in 0..20 {
            let z = rng.complex_in_rect((0.1, 3.0), (-2.0, 2.0));
            let b = (z - col.alpha) / (z + col.alpha.conj());
            assert!(max_diff(&col.eval_halfplane(z).unwrap(), &col.eval_disk(b).unwrap()) < 1e-14);
        }
    }
}
