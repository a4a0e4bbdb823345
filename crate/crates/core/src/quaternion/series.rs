use super::{QMatrix, Quaternion};
use crate::error::{Error, Result};

/// Maximum retained degree; products are truncated here.
pub const MAX_SERIES_DEGREE: usize = 64;

/// `f(p) = sum_n (p - center)^n f_n` with a real center and coefficients on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePowerSeries {
    center: f64,
    coeffs: Vec<QMatrix>,
    radius: f64,
}

impl SlicePowerSeries {
    pub fn new(center: f64, coeffs: Vec<QMatrix>, radius: f64) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::DimensionMismatch(
                "a series needs at least one coefficient".into(),
            ));
        };
        if coeffs.iter().any(|c| c.shape() != first.shape()) {
            return Err(Error::DimensionMismatch(
                "series coefficients differ in shape".into(),
            ));
        }
        if coeffs.len() > MAX_SERIES_DEGREE + 1 {
            return Err(Error::DimensionMismatch(format!(
                "degree exceeds {MAX_SERIES_DEGREE}"
            )));
        }
        if !(radius > 0.0) {
            return Err(Error::DomainViolation(format!(
                "radius {radius} must be positive"
            )));
        }
        Ok(Self {
            center,
            coeffs,
            radius,
        })
    }

    /// Scalar series from quaternionic coefficients.
    pub fn scalar(center: f64, coeffs: &[Quaternion], radius: f64) -> Result<Self> {
        Self::new(
            center,
            coeffs.iter().map(|&q| QMatrix::scalar(q)).collect(),
            radius,
        )
    }

    pub fn constant(center: f64, c: QMatrix) -> Self {
        Self {
            center,
            coeffs: vec![c],
            radius: f64::INFINITY,
        }
    }

    /// `sum_{n <= degree} (p - center)^n A^n`, the truncated `(I - (p - center) A)^{-*}`.
    pub fn geometric(center: f64, a: &QMatrix, degree: usize, radius: f64) -> Result<Self> {
        let mut coeffs = vec![QMatrix::identity(a.nrows())];
        for n in 1..=degree.min(MAX_SERIES_DEGREE) {
            let next = &coeffs[n - 1] * a;
            coeffs.push(next);
        }
        Self::new(center, coeffs, radius)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn coeffs(&self) -> &[QMatrix] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    /// Horner evaluation; `p` must lie in the disk of convergence.
    pub fn eval(&self, p: Quaternion) -> Result<QMatrix> {
        let h = p - Quaternion::real(self.center);
        if h.norm() >= self.radius {
            return Err(Error::DomainViolation(format!(
                "{p} is outside the radius {}",
                self.radius
            )));
        }
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale_left(h) + c;
        }
        Ok(acc)
    }

    fn same_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch(self.center, other.center));
        }
        Ok(())
    }

    /// `(f * g)_n = sum_k f_k g_{n-k}`, truncated at [`MAX_SERIES_DEGREE`].
    pub fn star_product(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        if self.shape().1 != other.shape().0 {
            return Err(Error::DimensionMismatch(
                "star product shapes do not chain".into(),
            ));
        }
        let degree = (self.degree() + other.degree()).min(MAX_SERIES_DEGREE);
        let shape = (self.shape().0, other.shape().1);
        let coeffs = (0..=degree)
            .map(|n| {
                let lo = n.saturating_sub(other.degree());
                (lo..=n.min(self.degree())).fold(QMatrix::zeros(shape.0, shape.1), |acc, k| {
                    &acc + &(&self.coeffs[k] * &other.coeffs[n - k])
                })
            })
            .collect();
        Ok(Self {
            center: self.center,
            coeffs,
            radius: self.radius.min(other.radius),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("series sum shapes differ".into()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = QMatrix::zeros(self.shape().0, self.shape().1);
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
            .collect();
        Ok(Self {
            center: self.center,
            coeffs,
            radius: self.radius.min(other.radius),
        })
    }

    /// Real coefficients: each slice `C_I` is mapped into itself (scalar case).
    pub fn is_intrinsic(&self) -> bool {
        self.coeffs.iter().all(QMatrix::is_real)
    }

    /// `R_alpha f = (p - alpha)^{-1}(f(p) - f(alpha))`, a coefficient shift.
    pub fn resolvent(&self, alpha: f64) -> Result<Self> {
        if alpha != self.center {
            return Err(Error::CenterMismatch(alpha, self.center));
        }
        let coeffs = if self.coeffs.len() == 1 {
            vec![QMatrix::zeros(self.shape().0, self.shape().1)]
        } else {
            self.coeffs[1..].to_vec()
        };
        Ok(Self {
            center: self.center,
            coeffs,
            radius: self.radius,
        })
    }
}

pub fn resolvent_r_alpha_q(f: &SlicePowerSeries, alpha: f64) -> Result<SlicePowerSeries> {
    f.resolvent(alpha)
}

pub fn is_intrinsic(f: &SlicePowerSeries) -> bool {
    f.is_intrinsic()
}
