//! From a resolvent-invariant model space to a coisometric colligation.

use std::f64::consts::PI;

use super::{Colligation, FiniteModelSpace};
use crate::error::{Error, Result};
use crate::indefinite::{defect_factorization, herm_eig, DefectFactor, Inertia, Metric, MetricMap};
use crate::linalg::{inverse, max_abs, vstack, CMat, C64};

/// Both sides of the index balance
/// `ind_-(I - C C^[*]) + ind_-(P) = ind_-(I - C^[*] C) + ind_-(P [+] C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexBalance {
    pub defect_left: usize,
    pub state: usize,
    pub defect_right: usize,
    pub product: usize,
}

impl IndexBalance {
    pub fn holds(&self) -> bool {
        self.defect_left + self.state == self.defect_right + self.product
    }
}

/// The colligation together with every intermediate object of the construction.
#[derive(Debug, Clone)]
pub struct Construction {
    pub colligation: Colligation,
    /// Scale tying `T` to the resolvent: `2 Re alpha` (half-plane) or `rho(alpha, alpha)` (unified).
    pub k: f64,
    /// `T` and `G` in the coordinates of the given basis.
    pub t: CMat,
    pub g: CMat,
    /// Hermitian slack of the model-space inequality; must be positive semidefinite.
    pub slack: CMat,
    pub slack_inertia: Inertia,
    /// Factor `[F; H]` of the coisometry defect, with its metric `C1`.
    pub defect: DefectFactor,
    /// `S` with `gram = S^H J_P S`; colligation blocks are expressed in `y = S x`.
    pub transform: CMat,
    pub index_balance: IndexBalance,
}

/// Check `slack >= 0` relative to `scale` and return its inertia.
pub(crate) fn check_slack(slack: &CMat, scale: f64, tol: f64) -> Result<Inertia> {
    let eig = herm_eig(slack, 1e-8)?;
    let band = tol * scale.max(f64::MIN_POSITIVE);
    if let Some(&lowest) = eig.values.first() {
        if lowest < -band {
            return Err(Error::InequalityViolated { value: lowest });
        }
    }
    Ok(Inertia::from_values(&eig.values, band))
}

/// Build the colligation from a half-plane model space.
///
/// With `k = 2 Re alpha`: `T = k A + I`, `G = sqrt(2 pi k) E`, and `[F; H]`
/// factors the defect of the contraction `[T; G]`.
pub fn construct_from_space(m: &FiniteModelSpace, tol: f64) -> Result<Construction> {
    let alpha = m.alpha;
    if alpha.re <= 0.0 {
        return Err(Error::DomainViolation(format!(
            "base point {alpha} must have Re > 0"
        )));
    }
    let k = 2.0 * alpha.re;
    let (p, a, e) = (&m.gram, &m.a_alpha, &m.e_alpha);
    let n = m.dim();

    let terms = [
        (a.adjoint() * p * a).scale(k),
        p * a,
        a.adjoint() * p,
        (e.adjoint() * m.coeff_metric.apply_left(e)).scale(2.0 * PI),
    ];
    let scale = terms.iter().map(max_abs).fold(max_abs(p), f64::max);
    let slack = -(&terms[0] + &terms[1] + &terms[2] + &terms[3]);
    let slack = (&slack + slack.adjoint()) * C64::new(0.5, 0.0);
    let slack_inertia = check_slack(&slack, scale, tol)?;

    let t = a * C64::new(k, 0.0) + CMat::identity(n, n);
    let g = e * C64::new((2.0 * PI * k).sqrt(), 0.0);
    realize_from_contraction(m, t, g, k, slack, slack_inertia, tol)
}

/// Shared tail of every construction: normalize the Gram matrix, factor the
/// defect of `[T; G]` and assemble the colligation.
pub(crate) fn realize_from_contraction(
    m: &FiniteModelSpace,
    t: CMat,
    g: CMat,
    k: f64,
    slack: CMat,
    slack_inertia: Inertia,
    tol: f64,
) -> Result<Construction> {
    let (metric_p, s) = if m.dim() == 0 {
        (Metric::euclidean(0), CMat::zeros(0, 0))
    } else {
        Metric::from_gram(&m.gram, 1e-12)?
    };
    let s_inv = inverse(&s, || Error::SingularMetric)?;
    let t_can = &s * &t * &s_inv;
    let g_can = &g * &s_inv;

    let q = metric_p.direct_sum(&m.coeff_metric);
    let contraction = MetricMap::new(vstack(&t_can, &g_can), metric_p.clone(), q.clone())?;
    let defect = defect_factorization(&contraction, tol)?;

    let n = metric_p.dim();
    let x = &defect.x.matrix;
    let f = x.rows(0, n).into_owned();
    let h = x.rows(n, x.nrows() - n).into_owned();

    // J_P (I - C^[*] C), congruent to the slack.
    let jc = q.apply_left(&contraction.matrix);
    let right = metric_p.gram() - contraction.matrix.adjoint() * jc;
    let right_scale = max_abs(&right).max(1.0);
    let right_inertia = Inertia::from_values(
        &herm_eig(&((&right + right.adjoint()) * C64::new(0.5, 0.0)), 1e-8)?.values,
        tol * right_scale,
    );
    let index_balance = IndexBalance {
        defect_left: defect.inertia.n_minus,
        state: metric_p.ind_minus(),
        defect_right: right_inertia.n_minus,
        product: q.ind_minus(),
    };

    let colligation = Colligation::new(
        t_can,
        f,
        g_can,
        h,
        metric_p,
        defect.metric.clone(),
        m.coeff_metric.clone(),
        m.alpha,
        1e-8,
    )?;
    Ok(Construction {
        colligation,
        k,
        t,
        g,
        slack,
        slack_inertia,
        defect,
        transform: s,
        index_balance,
    })
}
