//! Finite-dimensional model spaces given by raw matrices.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::kernel_spaces::{gram_matrix, PointChoice};
use crate::linalg::{hermitian_defect, max_abs, solve, CMat, CVec, C64};
use crate::unified::AbPair;

/// A finite-dimensional reproducing kernel space described in a basis.
///
/// `gram` is the Gram matrix of the basis (`x^H gram y`-style with
/// `gram[(i, j)] = [e_j, e_i]`), `a_alpha` represents the resolvent at the
/// base point, and `e_alpha` represents point evaluation at the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteModelSpace {
    pub gram: CMat,
    pub a_alpha: CMat,
    pub e_alpha: CMat,
    pub coeff_metric: Metric,
    pub alpha: C64,
}

impl FiniteModelSpace {
    pub fn new(
        gram: CMat,
        a_alpha: CMat,
        e_alpha: CMat,
        coeff_metric: Metric,
        alpha: C64,
    ) -> Result<Self> {
        let n = gram.nrows();
        if !gram.is_square()
            || a_alpha.shape() != (n, n)
            || e_alpha.shape() != (coeff_metric.dim(), n)
        {
            return Err(Error::DimensionMismatch(format!(
                "gram {:?}, A {:?}, E {:?} with coefficient dimension {}",
                gram.shape(),
                a_alpha.shape(),
                e_alpha.shape(),
                coeff_metric.dim()
            )));
        }
        let asym = hermitian_defect(&gram);
        if asym > 1e-10 * max_abs(&gram).max(1e-300) {
            return Err(Error::NonHermitian {
                asymmetry: asym,
                tol: 1e-10,
            });
        }
        Ok(Self {
            gram,
            a_alpha,
            e_alpha,
            coeff_metric,
            alpha,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// Model space spanned by kernel sections `e_j = K(., w_j) c_j` of a known kernel.
    ///
    /// `ab = None` uses the classical resolvent `R_alpha`; otherwise the matrix
    /// represents `R(a, b, alpha)`. The span must be resolvent-invariant (true
    /// for the space of any rational `S` once enough generic sections are used).
    pub fn from_kernel_sections<K>(
        kernel: K,
        coeff_metric: &Metric,
        alpha: C64,
        choice: &PointChoice,
        ab: Option<&AbPair>,
    ) -> Result<Self>
    where
        K: Fn(C64, C64) -> Result<CMat> + Sync,
    {
        let n = choice.len();
        let gram = gram_matrix(&kernel, choice, coeff_metric)?;
        let m = coeff_metric.dim();
        let section = |j: usize, z: C64| -> Result<CVec> {
            Ok(kernel(z, choice.points[j])? * choice.vector(j))
        };

        let mut e_alpha = CMat::zeros(m, n);
        let mut b = CMat::zeros(n, n);
        for j in 0..n {
            e_alpha.set_column(j, &section(j, alpha)?);
            let f_alpha = section(j, alpha)?;
            let quotient = |z: C64| -> Result<CVec> {
                let (az, bz, aa, ba) = match ab {
                    None => (C64::new(1.0, 0.0), z, C64::new(1.0, 0.0), alpha),
                    Some(ab) => (
                        ab.a.eval(z),
                        ab.b.eval(z),
                        ab.a.eval(alpha),
                        ab.b.eval(alpha),
                    ),
                };
                Ok((section(j, z)? * az - &f_alpha * aa) / (aa * bz - ba * az))
            };
            for i in 0..n {
                let w = choice.points[i];
                let value = if (w - alpha).norm() < 1e-6 * (1.0 + alpha.norm()) {
                    mean_on_circle(&quotient, w, 0.05 * (1.0 + alpha.norm()))?
                } else {
                    quotient(w)?
                };
                b[(i, j)] = coeff_metric.form(&value, &choice.vector(i));
            }
        }
        let a_alpha = solve(&gram, &b, || Error::SingularMetric)?;
        Self::new(gram, a_alpha, e_alpha, coeff_metric.clone(), alpha)
    }
}

/// Value at the center of an analytic function, by the mean-value property on a 64-point circle.
fn mean_on_circle(f: &dyn Fn(C64) -> Result<CVec>, center: C64, radius: f64) -> Result<CVec> {
    const N: usize = 64;
    let mut acc: Option<CVec> = None;
    for k in 0..N {
        let z = center + C64::from_polar(radius, TAU * k as f64 / N as f64);
        let v = f(z)?;
        acc = Some(match acc {
            Some(a) => a + v,
            None => v,
        });
    }
    Ok(acc.expect("N > 0").unscale(N as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;
    use std::f64::consts::PI;

    #[test]
    fn one_dimensional_blaschke_model() {
        // K(z, w) = 1/(pi (z + 1)(conj w + 1)) is the kernel of s0 = (z - 1)/(z + 1).
        let k = |z: C64, w: C64| {
            Ok(CMat::from_element(
                1,
                1,
                re(1.0) / ((z + 1.0) * (w.conj() + 1.0) * PI),
            ))
        };
        let choice = PointChoice::with_basis(&[re(1.0)], 1).unwrap();
        let m = FiniteModelSpace::from_kernel_sections(
            k,
            &Metric::euclidean(1),
            re(1.0),
            &choice,
            None,
        )
        .unwrap();
        assert!((m.gram[(0, 0)] - re(1.0 / (4.0 * PI))).norm() < 1e-15);
        assert!((m.e_alpha[(0, 0)] - re(1.0 / (4.0 * PI))).norm() < 1e-15);
        assert!((m.a_alpha[(0, 0)] - re(-0.5)).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_shapes() {
        let r = FiniteModelSpace::new(
            CMat::identity(2, 2),
            CMat::identity(3, 3),
            CMat::zeros(1, 2),
            Metric::euclidean(1),
            re(1.0),
        );
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}
