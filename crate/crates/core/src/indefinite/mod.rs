//! Finite-dimensional linear algebra over indefinite metrics.
//!
//! A [`Metric`] is kept in canonical form `J = diag(+-1)`; arbitrary Hermitian
//! invertible Gram matrices are normalized once by congruence
//! ([`Metric::from_gram`]). With canonical metrics the indefinite adjoint of a
//! map `A : (C^n, J1) -> (C^m, J2)` is `J1 A^H J2`, characterized by
//! `[A x, y]_2 = [x, A^[*] y]_1` where `[x, y] = y^H J x`.

mod defect;
mod eigen;

pub use defect::{defect_factorization, DefectFactor};
pub use eigen::{herm_eig, HermEig};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{max_diff, CMat, CVec, C64};

/// Default tolerance for eigenvalue classification, relative to the largest entry.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Counts of positive, negative and (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    /// Classify eigenvalues against an absolute threshold.
    pub fn from_values(values: &[f64], threshold: f64) -> Self {
        let mut out = Inertia {
            n_plus: 0,
            n_minus: 0,
            n_zero: 0,
        };
        for &v in values {
            if v > threshold {
                out.n_plus += 1;
            } else if v < -threshold {
                out.n_minus += 1;
            } else {
                out.n_zero += 1;
            }
        }
        out
    }
}

/// Inertia of a Hermitian matrix; eigenvalues within `[-tol, tol]` count as zero.
pub fn inertia(m: &CMat, tol: f64) -> Result<Inertia> {
    let eig = herm_eig(m, tol)?;
    Ok(Inertia::from_values(&eig.values, tol))
}

/// Inertia with the zero band scaled by the spectral radius, `|lambda| <= tol * max|lambda|`.
pub fn inertia_relative(m: &CMat, tol: f64) -> Result<Inertia> {
    let eig = herm_eig(m, tol)?;
    let scale = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    Ok(Inertia::from_values(&eig.values, tol * scale))
}

/// Canonical indefinite metric `J = diag(signs)` with `signs[i]` in `{+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Metric {
    signs: Vec<i8>,
}

impl TryFrom<Vec<i8>> for Metric {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        Metric::signature(&signs)
    }
}

impl From<Metric> for Vec<i8> {
    fn from(m: Metric) -> Self {
        m.signs
    }
}

impl Metric {
    pub fn euclidean(dim: usize) -> Self {
        Self {
            signs: vec![1; dim],
        }
    }

    pub fn signature(signs: &[i8]) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parse(format!(
                "signature entries must be +1 or -1, got {signs:?}"
            )));
        }
        Ok(Self {
            signs: signs.to_vec(),
        })
    }

    /// `n_pos` positive directions followed by `n_neg` negative ones.
    pub fn with_inertia(n_pos: usize, n_neg: usize) -> Self {
        let mut signs = vec![1; n_pos];
        signs.extend(std::iter::repeat_n(-1, n_neg));
        Self { signs }
    }

    /// Normalize a Hermitian invertible Gram matrix by congruence.
    ///
    /// Returns `(metric, s)` with `gram = s^H J s`; coordinates change as `y = s x`.
    pub fn from_gram(gram: &CMat, tol: f64) -> Result<(Self, CMat)> {
        let eig = herm_eig(gram, tol)?;
        let scale = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if eig.values.iter().any(|v| v.abs() <= tol * scale) || scale == 0.0 {
            return Err(Error::SingularMetric);
        }
        let n = gram.nrows();
        let signs = eig
            .values
            .iter()
            .map(|v| if *v > 0.0 { 1 } else { -1 })
            .collect();
        let s = CMat::from_fn(n, n, |i, j| {
            eig.vectors[(j, i)].conj() * eig.values[i].abs().sqrt()
        });
        Ok((Self { signs }, s))
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn ind_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn ind_plus(&self) -> usize {
        self.dim() - self.ind_minus()
    }

    pub fn is_euclidean(&self) -> bool {
        self.signs.iter().all(|&s| s > 0)
    }

    pub fn gram(&self) -> CMat {
        let n = self.dim();
        CMat::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(self.signs[i] as f64, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn inertia(&self) -> Inertia {
        Inertia {
            n_plus: self.ind_plus(),
            n_minus: self.ind_minus(),
            n_zero: 0,
        }
    }

    /// Orthogonal sum `self [+] other`.
    pub fn direct_sum(&self, other: &Metric) -> Metric {
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Metric { signs }
    }

    /// `J m`, flipping the rows that carry a negative sign.
    pub fn apply_left(&self, m: &CMat) -> CMat {
        assert_eq!(m.nrows(), self.dim(), "metric/row dimension mismatch");
        let mut out = m.clone();
        for (i, &s) in self.signs.iter().enumerate() {
            if s < 0 {
                out.row_mut(i).neg_mut();
            }
        }
        out
    }

    /// `m J`, flipping the columns that carry a negative sign.
    pub fn apply_right(&self, m: &CMat) -> CMat {
        assert_eq!(m.ncols(), self.dim(), "metric/column dimension mismatch");
        let mut out = m.clone();
        for (j, &s) in self.signs.iter().enumerate() {
            if s < 0 {
                out.column_mut(j).neg_mut();
            }
        }
        out
    }

    /// `[x, y] = y^H J x`.
    pub fn form(&self, x: &CVec, y: &CVec) -> C64 {
        x.iter()
            .zip(y.iter())
            .zip(self.signs.iter())
            .map(|((xi, yi), &s)| yi.conj() * xi * s as f64)
            .sum()
    }
}

/// A linear map between two canonical metric spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMap {
    pub matrix: CMat,
    pub domain: Metric,
    pub codomain: Metric,
}

impl MetricMap {
    pub fn new(matrix: CMat, domain: Metric, codomain: Metric) -> Result<Self> {
        if matrix.ncols() != domain.dim() || matrix.nrows() != codomain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map of shape {:?} between metrics of dims {} -> {}",
                matrix.shape(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(Self {
            matrix,
            domain,
            codomain,
        })
    }

    pub fn identity(metric: &Metric) -> Self {
        let n = metric.dim();
        Self {
            matrix: CMat::identity(n, n),
            domain: metric.clone(),
            codomain: metric.clone(),
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &MetricMap) -> Result<MetricMap> {
        if other.codomain != self.domain {
            return Err(Error::DimensionMismatch(
                "composition across different metrics".into(),
            ));
        }
        MetricMap::new(
            &self.matrix * &other.matrix,
            other.domain.clone(),
            self.codomain.clone(),
        )
    }
}

/// Indefinite adjoint `A^[*] = J_dom A^H J_cod`.
pub fn indef_adjoint(a: &MetricMap) -> MetricMap {
    let m = a
        .domain
        .apply_left(&a.codomain.apply_right(&a.matrix.adjoint()));
    MetricMap {
        matrix: m,
        domain: a.codomain.clone(),
        codomain: a.domain.clone(),
    }
}

/// `|| M M^[*] - I ||_max` on the codomain.
pub fn coisometry_defect(m: &MetricMap) -> f64 {
    let n = m.codomain.dim();
    let prod = &m.matrix * indef_adjoint(m).matrix;
    max_diff(&prod, &CMat::identity(n, n))
}

pub fn is_coisometric(m: &MetricMap, tol: f64) -> bool {
    coisometry_defect(m) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag_real, re};
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn basis(n: usize, i: usize) -> CVec {
        CVec::from_fn(n, |k, _| if k == i { re(1.0) } else { re(0.0) })
    }

    #[test]
    fn inertia_of_signature() {
        let m = diag_real(&[1.0, -1.0, 0.0]);
        assert_eq!(
            inertia(&m, 1e-10).unwrap(),
            Inertia {
                n_plus: 1,
                n_minus: 1,
                n_zero: 1
            }
        );
    }

    #[test]
    fn adjoint_examples() {
        let e = Metric::euclidean(2);
        let mut rng = SplitMix64::new(5);
        let a = MetricMap::new(rng.complex_matrix(2, 2), e.clone(), e.clone()).unwrap();
        assert_eq!(indef_adjoint(&a).matrix, a.matrix.adjoint());

        // J = diag(1, -1), A = [[0, 1], [0, 0]].
        let j = Metric::signature(&[1, -1]).unwrap();
        let a = MetricMap::new(
            CMat::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]),
            j.clone(),
            j.clone(),
        )
        .unwrap();
        let adj = indef_adjoint(&a);
        let expected = CMat::from_row_slice(2, 2, &[re(0.0), re(0.0), re(-1.0), re(0.0)]);
        assert_eq!(adj.matrix, expected);
        for x in 0..2 {
            for y in 0..2 {
                let (bx, by) = (basis(2, x), basis(2, y));
                let lhs = j.form(&(&a.matrix * &bx), &by);
                let rhs = j.form(&bx, &(&adj.matrix * &by));
                assert!((lhs - rhs).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn coisometry_examples() {
        let j = Metric::signature(&[1, -1, 1]).unwrap();
        assert!(is_coisometric(&MetricMap::identity(&j), 1e-12));
        let s = C64::from_polar(1.0, 0.7);
        let m = MetricMap::new(
            CMat::from_element(1, 1, s),
            Metric::euclidean(1),
            Metric::euclidean(1),
        )
        .unwrap();
        assert!(is_coisometric(&m, 1e-12));
        // [[T, F], [G, H]] = [[0, 1], [1, 0]] realizes S(z) = z.
        let swap = CMat::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)]);
        let m = MetricMap::new(swap, Metric::euclidean(2), Metric::euclidean(2)).unwrap();
        assert!(is_coisometric(&m, 1e-12));
    }

    #[test]
    fn gram_normalization() {
        let mut rng = SplitMix64::new(9);
        let s = rng.complex_matrix(4, 4);
        let j = Metric::signature(&[1, -1, 1, -1]).unwrap();
        let gram = s.adjoint() * j.gram() * &s;
        let (metric, t) = Metric::from_gram(&gram, 1e-10).unwrap();
        assert_eq!(metric.ind_minus(), 2);
        assert!(max_diff(&(t.adjoint() * metric.gram() * &t), &gram) < 1e-10);
        assert_eq!(inertia(&metric.gram(), 1e-10).unwrap().n_zero, 0);
        assert!(matches!(
            Metric::from_gram(&diag_real(&[1.0, 0.0]), 1e-10),
            Err(Error::SingularMetric)
        ));
    }

    fn signs_strategy(max: usize) -> impl Strategy<Value = Vec<i8>> {
        prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..=max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn adjoint_is_an_involution(dom in signs_strategy(5), cod in signs_strategy(5), seed in any::<u64>()) {
            let mut rng = SplitMix64::new(seed);
            let (d, c) = (Metric::signature(&dom).unwrap(), Metric::signature(&cod).unwrap());
            let a = MetricMap::new(rng.complex_matrix(c.dim(), d.dim()), d, c).unwrap();
            let back = indef_adjoint(&indef_adjoint(&a));
            prop_assert!(max_diff(&back.matrix, &a.matrix) < 1e-12);
            prop_assert_eq!(back.domain, a.domain);
        }

        #[test]
        fn sylvester_law_of_inertia(signs in signs_strategy(8), seed in any::<u64>()) {
            let mut rng = SplitMix64::new(seed);
            let n = signs.len();
            let j = Metric::signature(&signs).unwrap();
            let mut s = rng.complex_matrix(n, n);
            for i in 0..n {
                s[(i, i)] += re(3.0);
            }
            let congruent = &s * j.gram() * s.adjoint();
            let got = inertia_relative(&congruent, 1e-10).unwrap();
            prop_assert_eq!(got, j.inertia());
        }
    }
}
