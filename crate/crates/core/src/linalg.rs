//! Dense complex matrix helpers shared by every module.

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Relative pivot threshold below which an LU factorization is declared singular.
pub const PIVOT_TOL: f64 = 1e-13;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Largest entry modulus (0 for empty matrices).
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entry modulus of a vector.
pub fn vmax(v: &CVec) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Max-entry distance between two matrices of equal shape.
pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_diff shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Distance of `m` from Hermitian symmetry in the max-entry norm.
pub fn hermitian_defect(m: &CMat) -> f64 {
    max_diff(m, &m.adjoint())
}

pub fn diag_real(d: &[f64]) -> CMat {
    CMat::from_fn(d.len(), d.len(), |i, j| {
        if i == j {
            re(d[i])
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Stack `top` over `bottom`.
pub fn vstack(top: &CMat, bottom: &CMat) -> CMat {
    assert_eq!(top.ncols(), bottom.ncols(), "vstack column mismatch");
    let (r1, r2) = (top.nrows(), bottom.nrows());
    CMat::from_fn(r1 + r2, top.ncols(), |i, j| {
        if i < r1 {
            top[(i, j)]
        } else {
            bottom[(i - r1, j)]
        }
    })
}

/// Place `left` beside `right`.
pub fn hstack(left: &CMat, right: &CMat) -> CMat {
    assert_eq!(left.nrows(), right.nrows(), "hstack row mismatch");
    let (c1, c2) = (left.ncols(), right.ncols());
    CMat::from_fn(left.nrows(), c1 + c2, |i, j| {
        if j < c1 {
            left[(i, j)]
        } else {
            right[(i, j - c1)]
        }
    })
}

/// Block matrix `[[a, b], [c, d]]`.
pub fn block2(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
    vstack(&hstack(a, b), &hstack(c, d))
}

pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let z_ab = CMat::zeros(a.nrows(), b.ncols());
    let z_ba = CMat::zeros(b.nrows(), a.ncols());
    block2(a, &z_ab, &z_ba, b)
}

fn lu_checked(
    m: &CMat,
    what: impl Fn() -> Error,
) -> Result<nalgebra::linalg::LU<C64, nalgebra::Dyn, nalgebra::Dyn>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {:?}",
            m.shape()
        )));
    }
    let lu = m.clone().lu();
    let u = lu.u();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for i in 0..u.nrows() {
        let p = u[(i, i)].norm();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    let scale = hi.max(max_abs(m));
    if u.nrows() > 0 && (!lo.is_finite() || lo <= PIVOT_TOL * scale || scale == 0.0) {
        return Err(what());
    }
    Ok(lu)
}

/// Solve `m x = rhs` by partial-pivot LU; near-singular pivots surface as `what()`.
pub fn solve(m: &CMat, rhs: &CMat, what: impl Fn() -> Error) -> Result<CMat> {
    if m.nrows() == 0 {
        return Ok(rhs.clone());
    }
    let lu = lu_checked(m, &what)?;
    lu.solve(rhs).ok_or_else(what)
}

pub fn inverse(m: &CMat, what: impl Fn() -> Error) -> Result<CMat> {
    solve(m, &CMat::identity(m.nrows(), m.nrows()), what)
}

/// `x * m^{-1}` computed as `(m^H \ x^H)^H`.
pub fn solve_right(x: &CMat, m: &CMat, what: impl Fn() -> Error) -> Result<CMat> {
    Ok(solve(&m.adjoint(), &x.adjoint(), what)?.adjoint())
}

pub fn to_cvec(v: &[C64]) -> CVec {
    DVector::from_column_slice(v)
}
