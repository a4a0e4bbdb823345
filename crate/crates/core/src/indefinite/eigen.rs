//! Cyclic Jacobi eigensolver for dense Hermitian matrices.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_defect, max_abs, CMat, C64};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `M = U diag(values) U^H`, values ascending.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermEig {
    /// Rebuild `U diag(values) U^H`.
    pub fn reconstruct(&self) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// `tol` bounds the admissible asymmetry relative to the largest entry.
pub fn herm_eig(m: &CMat, tol: f64) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "herm_eig needs a square matrix, got {:?}",
            m.shape()
        )));
    }
    let asym = hermitian_defect(m);
    let limit = tol * max_abs(m);
    if asym > limit {
        return Err(Error::NonHermitian {
            asymmetry: asym,
            tol: limit,
        });
    }
    let n = m.nrows();
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut u = CMat::identity(n, n);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s = a[(i, j)].norm_sqr();
                total += s;
                if i != j {
                    off += s;
                }
            }
        }
        if off <= (f64::EPSILON * f64::EPSILON) * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut u, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// One rotation annihilating `a[p, q]`; accumulates the unitary into `u`.
fn rotate(a: &mut CMat, u: &mut CMat, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Rotations below round-off of the diagonal only churn the matrix.
    if b <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase_conj = (apq / b).conj();
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] restricted to (p, q).
    let g_pp = C64::new(cs, 0.0);
    let g_pq = C64::new(sn, 0.0);
    let g_qp = phase_conj * (-sn);
    let g_qq = phase_conj * cs;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    for k in 0..n {
        let ukp = u[(k, p)];
        let ukq = u[(k, q)];
        u[(k, p)] = ukp * g_pp + ukq * g_qp;
        u[(k, q)] = ukp * g_pq + ukq * g_qq;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}
