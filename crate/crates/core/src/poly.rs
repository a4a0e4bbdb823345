//! Dense complex polynomials with scalar and vector coefficients.

use serde::{Deserialize, Serialize};

use crate::linalg::{CVec, C64};

/// `p(z) = sum_k coeffs[k] z^k`; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<C64>", into = "Vec<C64>")]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl From<Vec<C64>> for Poly {
    fn from(coeffs: Vec<C64>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<C64> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == C64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or_default();
        Poly::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Synthetic division by `(z - alpha)`: returns `(q, r)` with `p = (z - alpha) q + r`.
    pub fn div_linear(&self, alpha: C64) -> (Poly, C64) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), C64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut carry = C64::new(0.0, 0.0);
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry * alpha;
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }
}

/// Polynomial with coefficients in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct VecPoly {
    dim: usize,
    coeffs: Vec<CVec>,
}

impl VecPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: Vec::new(),
        }
    }

    pub fn new(dim: usize, coeffs: Vec<CVec>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.len() == dim),
            "coefficient dimension mismatch"
        );
        let mut p = Self { dim, coeffs };
        p.trim();
        p
    }

    /// `p(z) v`.
    pub fn from_scalar(p: &Poly, v: &CVec) -> Self {
        Self::new(v.len(), p.coeffs().iter().map(|&c| v * c).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.iter().all(|z| *z == C64::new(0.0, 0.0))) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[CVec] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: C64) -> CVec {
        self.coeffs
            .iter()
            .rev()
            .fold(CVec::zeros(self.dim), |acc, c| acc * z + c)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &VecPoly) -> Self {
        assert_eq!(self.dim, other.dim, "vector polynomial dimension mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = CVec::zeros(self.dim);
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
            .collect();
        Self::new(self.dim, coeffs)
    }

    /// Difference quotient `(p(z) - p(alpha)) / (z - alpha)` by synthetic division.
    pub fn resolvent(&self, alpha: C64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero(self.dim);
        }
        let mut q = vec![CVec::zeros(self.dim); n - 1];
        let mut carry = CVec::zeros(self.dim);
        for k in (1..n).rev() {
            let v = &self.coeffs[k] + carry * alpha;
            q[k - 1] = v.clone();
            carry = v;
        }
        Self::new(self.dim, q)
    }
}
