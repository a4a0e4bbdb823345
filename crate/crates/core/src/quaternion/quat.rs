use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::rng::SplitMix64;

/// `p = x0 + x1 i + x2 j + x3 k` with `i^2 = j^2 = k^2 = ijk = -1`.
///
/// Serialized as `[x0, x1, x2, x3]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(x: [f64; 4]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.x0, q.x1, q.x2, q.x3]
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub const fn real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    /// `x + I y` for a unit imaginary `I`.
    pub fn on_slice(z: C64, unit: Quaternion) -> Self {
        Self::real(z.re) + unit * z.im
    }

    /// The complex number `x0 + x1 i` (the slice `C_i`).
    pub fn from_complex(z: C64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }

    pub fn re(self) -> f64 {
        self.x0
    }

    pub fn imag(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0
    }

    pub fn inv(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj() * (1.0 / n))
    }

    /// `p = x + I y` with `y >= 0` and `I` a unit imaginary; real `p` gets `I = i`.
    pub fn slice(self) -> (C64, Quaternion) {
        let im = self.imag();
        let y = im.norm();
        if y == 0.0 {
            (C64::new(self.x0, 0.0), Self::I)
        } else {
            (C64::new(self.x0, y), im * (1.0 / y))
        }
    }

    /// Random quaternion with standard normal components.
    pub fn random(rng: &mut SplitMix64) -> Self {
        Self::new(rng.normal(), rng.normal(), rng.normal(), rng.normal())
    }

    /// Uniformly random unit imaginary (a point of the sphere `S`).
    pub fn random_unit_imaginary(rng: &mut SplitMix64) -> Self {
        loop {
            let v = Self::new(0.0, rng.normal(), rng.normal(), rng.normal());
            let n = v.norm();
            if n > 1e-3 {
                return v * (1.0 / n);
            }
        }
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.x0, self.x1, self.x2, self.x3)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.x0 - o.x0,
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
            a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
            a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
            a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        self * (1.0 / s)
    }
}

pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

pub fn qconj(p: Quaternion) -> Quaternion {
    p.conj()
}

pub fn qnorm(p: Quaternion) -> f64 {
    p.norm()
}

pub fn qinv(p: Quaternion) -> Result<Quaternion> {
    p.inv()
}
