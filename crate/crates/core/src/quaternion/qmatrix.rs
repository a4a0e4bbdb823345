use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Quaternion;
use crate::error::{Error, Result};
use crate::indefinite::Metric;
use crate::linalg::{inverse, max_abs, CMat, C64};
use crate::rng::SplitMix64;

/// Dense quaternionic matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn scalar(q: Quaternion) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![q],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged quaternionic matrix".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Entries on the slice `C_i`: `x + y i`.
    pub fn from_complex(m: &CMat) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            Quaternion::from_complex(m[(i, j)])
        })
    }

    pub fn random(rng: &mut SplitMix64, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Quaternion::random(rng))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `q M`.
    pub fn scale_left(&self, q: Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| q * x).collect(),
        }
    }

    /// `M q`.
    pub fn scale_right(&self, q: Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * q).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, q| acc.max(q.norm()))
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_diff shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|q| q.is_real())
    }

    /// `chi(M) = [[Z1, Z2], [-conj(Z2), conj(Z1)]]` for `M = Z1 + Z2 j`, with
    /// `Z1 = x0 + x1 i` and `Z2 = x2 + x3 i`.
    pub fn embed(&self) -> CMat {
        let (m, n) = self.shape();
        let mut out = CMat::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let q = self[(i, j)];
                let z1 = C64::new(q.x0, q.x1);
                let z2 = C64::new(q.x2, q.x3);
                out[(i, j)] = z1;
                out[(i, n + j)] = z2;
                out[(m + i, j)] = -z2.conj();
                out[(m + i, n + j)] = z1.conj();
            }
        }
        out
    }

    /// Inverse of [`QMatrix::embed`]; fails unless the symplectic block pattern holds within `tol`.
    pub fn from_embedding(c: &CMat, tol: f64) -> Result<Self> {
        if !c.nrows().is_multiple_of(2) || !c.ncols().is_multiple_of(2) {
            return Err(Error::NotInImage {
                defect: f64::INFINITY,
            });
        }
        let (m, n) = (c.nrows() / 2, c.ncols() / 2);
        let mut defect = 0.0_f64;
        let out = Self::from_fn(m, n, |i, j| {
            let z1 = c[(i, j)];
            let z2 = c[(i, n + j)];
            defect = defect
                .max((c[(m + i, j)] + z2.conj()).norm())
                .max((c[(m + i, n + j)] - z1.conj()).norm());
            Quaternion::new(z1.re, z1.im, z2.re, z2.im)
        });
        if defect > tol * max_abs(c).max(1.0) {
            return Err(Error::NotInImage { defect });
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let inv = inverse(&self.embed(), || {
            Error::SingularResolvent("quaternionic matrix".into())
        })?;
        Self::from_embedding(&inv, 1e-8)
    }

    /// `X M^{-1}`.
    pub fn solve_right(&self, m: &Self, what: impl Fn() -> Error) -> Result<Self> {
        let x = crate::linalg::solve_right(&self.embed(), &m.embed(), what)?;
        Self::from_embedding(&x, 1e-8)
    }

    pub fn rows_range(&self, start: usize, count: usize) -> Self {
        Self::from_fn(count, self.cols, |i, j| self[(start + i, j)])
    }

    pub fn block(&self, (r0, c0): (usize, usize), (nr, nc): (usize, usize)) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (ra, ca) = a.shape();
        Self::from_fn(ra + c.rows, ca + b.cols, |i, j| match (i < ra, j < ca) {
            (true, true) => a[(i, j)],
            (true, false) => b[(i, j - ca)],
            (false, true) => c[(i - ra, j)],
            (false, false) => d[(i - ra, j - ca)],
        })
    }
}

/// `J (+) J`, the metric matching [`QMatrix::embed`].
pub fn embed_metric(j: &Metric) -> Metric {
    j.direct_sum(j)
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "QMatrix product shape mismatch");
        QMatrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Quaternion::ZERO, |acc, k| acc + self[(i, k)] * o[(k, j)])
        })
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), o.shape(), "QMatrix sum shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), o.shape(), "QMatrix difference shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Quaternion>>::deserialize(d)?;
        QMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

pub fn complex_embed(m: &QMatrix) -> CMat {
    m.embed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite::herm_eig;
    use crate::linalg::max_diff;

    #[test]
    fn embedding_of_units() {
        assert_eq!(QMatrix::identity(1).embed(), CMat::identity(2, 2));
        let e = QMatrix::scalar(Quaternion::I).embed();
        // i embeds as diag(i, -i)
        assert_eq!(e[(0, 0)], C64::new(0.0, 1.0));
        assert_eq!(e[(1, 1)], C64::new(0.0, -1.0));
        assert_eq!(e[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = SplitMix64::new(200);
        for _ in 0..10 {
            let m = QMatrix::random(&mut rng, 3, 3);
            let n = QMatrix::random(&mut rng, 3, 3);
            assert!(max_diff(&(&m * &n).embed(), &(m.embed() * n.embed())) < 1e-12);
            assert!(max_diff(&(&m + &n).embed(), &(m.embed() + n.embed())) < 1e-15);
            assert_eq!(m.adjoint().embed(), m.embed().adjoint());
        }
    }

    #[test]
    fn round_trip_and_rejection() {
        let mut rng = SplitMix64::new(201);
        let m = QMatrix::random(&mut rng, 2, 3);
        assert_eq!(QMatrix::from_embedding(&m.embed(), 1e-14).unwrap(), m);
        let bad = rng.complex_matrix(4, 4);
        assert!(matches!(
            QMatrix::from_embedding(&bad, 1e-10),
            Err(Error::NotInImage { .. })
        ));
    }

    #[test]
    fn hermitian_spectrum_is_doubled() {
        let mut rng = SplitMix64::new(202);
        let m = QMatrix::random(&mut rng, 3, 3);
        let h = &m + &m.adjoint();
        let e = herm_eig(&h.embed(), 1e-12).unwrap();
        for k in 0..3 {
            assert!((e.values[2 * k] - e.values[2 * k + 1]).abs() < 1e-10);
        }
    }

    #[test]
    fn inverse_via_embedding() {
        let mut rng = SplitMix64::new(203);
        let m = QMatrix::random(&mut rng, 3, 3);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).max_diff(&QMatrix::identity(3)) < 1e-10);
    }

    #[test]
    fn serde_row_major() {
        let m = QMatrix::from_rows(vec![vec![Quaternion::ONE, Quaternion::I]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[[1.0,0.0,0.0,0.0],[0.0,1.0,0.0,0.0]]]");
        assert_eq!(serde_json::from_str::<QMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<QMatrix>("[[[1,0,0,0]],[]]").is_err());
    }
}
