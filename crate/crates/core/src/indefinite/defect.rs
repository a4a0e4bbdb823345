//! Factorization of the coisometry defect `I - C C^[*]`.

use super::{herm_eig, Inertia, Metric, MetricMap};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

/// `X : C1 -> Q` with `X X^[*] = I_Q - C C^[*]`.
#[derive(Debug, Clone)]
pub struct DefectFactor {
    pub x: MetricMap,
    /// Metric of the auxiliary space `C1` (`diag(sign lambda)` over the kept eigenvalues).
    pub metric: Metric,
    /// Full inertia of `J_Q (I - C C^[*])` after the rank cut.
    pub inertia: Inertia,
    /// Eigenvalues of `J_Q (I - C C^[*])`, ascending.
    pub eigenvalues: Vec<f64>,
}

/// Factor the defect of `c : P -> Q` as `X X^[*]`.
///
/// Eigenvalues with `|lambda| <= tol * max(1, max|lambda|)` are dropped; any
/// eigenvalue inside `(tol, 10 tol]` on that scale is reported as
/// [`Error::RankAmbiguous`]. Columns of `X` follow descending `|lambda|`, each
/// rotated so its first significant entry is positive real.
pub fn defect_factorization(c: &MetricMap, tol: f64) -> Result<DefectFactor> {
    let q = &c.codomain;
    let n = q.dim();
    // J_Q (I - C J_P C^H J_Q) = J_Q - (J_Q C) J_P (J_Q C)^H
    let jc = q.apply_left(&c.matrix);
    let qm = q.gram() - &jc * c.domain.apply_left(&jc.adjoint());
    let eig = herm_eig(&qm, tol.max(1e-12))?;
    let scale = eig.values.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    let cut = tol * scale;

    if let Some(&v) = eig
        .values
        .iter()
        .find(|v| v.abs() > cut && v.abs() <= 10.0 * cut)
    {
        return Err(Error::RankAmbiguous { value: v });
    }

    let mut kept: Vec<usize> = (0..n).filter(|&i| eig.values[i].abs() > cut).collect();
    kept.sort_by(|&i, &j| eig.values[j].abs().total_cmp(&eig.values[i].abs()));

    let r = kept.len();
    let mut x = CMat::zeros(n, r);
    let mut signs = Vec::with_capacity(r);
    for (col, &i) in kept.iter().enumerate() {
        let lam = eig.values[i];
        let s = lam.abs().sqrt();
        for row in 0..n {
            x[(row, col)] = eig.vectors[(row, i)] * s;
        }
        signs.push(if lam > 0.0 { 1 } else { -1 });
    }
    let x = q.apply_left(&x);
    let x = normalize_phases(x);

    let metric = Metric::signature(&signs)?;
    let inertia = Inertia::from_values(&eig.values, cut);
    Ok(DefectFactor {
        x: MetricMap::new(x, metric.clone(), q.clone())?,
        metric,
        inertia,
        eigenvalues: eig.values,
    })
}

fn normalize_phases(mut x: CMat) -> CMat {
    for j in 0..x.ncols() {
        let col_max = x.column(j).iter().fold(0.0_f64, |a, z| a.max(z.norm()));
        let Some(pivot) = x
            .column(j)
            .iter()
            .copied()
            .find(|z| z.norm() > 1e-8 * col_max)
        else {
            continue;
        };
        let phase: C64 = pivot.conj() / pivot.norm();
        for i in 0..x.nrows() {
            x[(i, j)] *= phase;
        }
    }
    x
}
