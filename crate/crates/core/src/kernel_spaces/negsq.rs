//! Negative squares of matrix kernels on finite point sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indefinite::{herm_eig, Inertia, Metric};
use crate::linalg::{hermitian_defect, max_abs, CMat, CVec, C64};

/// Points `w_l` paired with coefficient vectors `c_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointChoice {
    pub points: Vec<C64>,
    pub vectors: Vec<Vec<C64>>,
}

impl PointChoice {
    pub fn new(points: Vec<C64>, vectors: Vec<CVec>) -> Result<Self> {
        if points.is_empty() || points.len() != vectors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points with {} vectors",
                points.len(),
                vectors.len()
            )));
        }
        let vectors = vectors
            .into_iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        Ok(Self { points, vectors })
    }

    /// Every point paired with every standard basis vector of `C^dim`.
    pub fn with_basis(points: &[C64], dim: usize) -> Result<Self> {
        let mut pts = Vec::with_capacity(points.len() * dim);
        let mut vecs = Vec::with_capacity(points.len() * dim);
        for &w in points {
            for k in 0..dim {
                pts.push(w);
                vecs.push(CVec::from_fn(dim, |i, _| {
                    C64::new(if i == k { 1.0 } else { 0.0 }, 0.0)
                }));
            }
        }
        Self::new(pts, vecs)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn vector(&self, i: usize) -> CVec {
        CVec::from_column_slice(&self.vectors[i])
    }
}

/// Gram matrix with entries `[K(w_k, w_l) c_k, c_l] = c_l^H J K(w_l, w_k) c_k` at `(l, k)`.
///
/// Rows are assembled in parallel; each entry is a fixed-order sum, so the
/// result does not depend on scheduling.
pub fn gram_matrix<K>(kernel: K, choice: &PointChoice, metric: &Metric) -> Result<CMat>
where
    K: Fn(C64, C64) -> Result<CMat> + Sync,
{
    let n = choice.len();
    let vecs: Vec<CVec> = (0..n).map(|i| choice.vector(i)).collect();
    if vecs.iter().any(|v| v.len() != metric.dim()) {
        return Err(Error::DimensionMismatch(
            "coefficient vectors do not match the metric".into(),
        ));
    }
    let rows: Vec<Vec<C64>> = (0..n)
        .into_par_iter()
        .map(|l| {
            let jc = metric.apply_left(&CMat::from_column_slice(
                vecs[l].len(),
                1,
                vecs[l].as_slice(),
            ));
            (0..n)
                .map(|k| {
                    let kv = kernel(choice.points[l], choice.points[k])? * &vecs[k];
                    Ok(jc.column(0).dotc(&kv))
                })
                .collect::<Result<Vec<C64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(CMat::from_fn(n, n, |l, k| rows[l][k]))
}

/// Number of negative eigenvalues of the Gram matrix.
///
/// Eigenvalues with `|lambda| <= tol * max|lambda|` count as zero.
pub fn negative_squares<K>(
    kernel: K,
    choice: &PointChoice,
    metric: &Metric,
    tol: f64,
) -> Result<usize>
where
    K: Fn(C64, C64) -> Result<CMat> + Sync,
{
    Ok(gram_inertia(&gram_matrix(kernel, choice, metric)?, tol)?.n_minus)
}

pub(crate) fn gram_inertia(gram: &CMat, tol: f64) -> Result<Inertia> {
    let asym = hermitian_defect(gram);
    if asym > 1e-8 * max_abs(gram).max(1.0) {
        return Err(Error::NonHermitianKernel { asymmetry: asym });
    }
    let eig = herm_eig(gram, 1.0)?;
    let scale = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    Ok(Inertia::from_values(&eig.values, tol * scale))
}
