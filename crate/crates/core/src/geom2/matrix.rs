use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::tol;

/// An element of PSL(2,ℝ): a real 2x2 matrix `[a b; c d]` of determinant 1,
/// identified with its negative.
///
/// Arithmetic is carried out on the stored representative; comparisons
/// ([`ProjMatrix::dist`], [`ProjMatrix::approx_eq`]) minimize over the sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ProjMatrix {
    pub const IDENTITY: ProjMatrix = ProjMatrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Validating constructor: entries finite and `|det − 1| < 1e−10`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Self { a, b, c, d };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let det = m.det();
        if (det - 1.0).abs() >= tol::DET {
            return Err(Error::NotUnimodular { det, tolerance: tol::DET });
        }
        Ok(m)
    }

    /// Rescales by `1/√det`. Fails for non-positive determinants.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::NotUnimodular { det, tolerance: tol::DET });
        }
        let s = det.sqrt().recip();
        let m = Self { a: a * s, b: b * s, c: c * s, d: d * s };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    /// Builds a matrix without checks. Callers guarantee `det ≈ 1`.
    pub(crate) const fn raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::raw(a, 0.0, 0.0, d)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|x| x.is_finite())
    }

    /// Inverse assuming unit determinant.
    pub fn inverse(&self) -> Self {
        Self::raw(self.d, -self.b, -self.c, self.a)
    }

    /// `self · other · self⁻¹`.
    pub fn conj(&self, other: &ProjMatrix) -> Self {
        *self * *other * self.inverse()
    }

    /// Largest absolute entry.
    pub fn norm(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `min(‖M − N‖∞, ‖M + N‖∞)` over entries.
    pub fn dist(&self, other: &ProjMatrix) -> f64 {
        let minus = (*self - *other).norm();
        let plus = Self::raw(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d).norm();
        minus.min(plus)
    }

    pub fn approx_eq(&self, other: &ProjMatrix, tolerance: f64) -> bool {
        self.dist(other) < tolerance
    }

    /// Distance to the identity up to sign.
    pub fn dist_to_identity(&self) -> f64 {
        self.dist(&Self::IDENTITY)
    }

    /// Sign representative with `a > 0`, or `a == 0` and `b > 0`.
    pub fn canonical(&self) -> Self {
        if self.a < 0.0 || (self.a == 0.0 && self.b < 0.0) {
            -*self
        } else {
            *self
        }
    }

    /// Conjugation by the orientation-reversing reflection `z ↦ −z̄`.
    pub fn mirrored(&self) -> Self {
        Self::raw(self.a, -self.b, -self.c, self.d)
    }
}

impl Default for ProjMatrix {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for ProjMatrix {
    type Output = ProjMatrix;

    fn mul(self, o: ProjMatrix) -> ProjMatrix {
        ProjMatrix::raw(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Neg for ProjMatrix {
    type Output = ProjMatrix;

    fn neg(self) -> ProjMatrix {
        ProjMatrix::raw(-self.a, -self.b, -self.c, -self.d)
    }
}

impl std::ops::Sub for ProjMatrix {
    type Output = ProjMatrix;

    fn sub(self, o: ProjMatrix) -> ProjMatrix {
        ProjMatrix::raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// Ordered product `m₁ m₂ ⋯ mₖ`; identity for an empty sequence.
pub fn product<'a, I>(factors: I) -> ProjMatrix
where
    I: IntoIterator<Item = &'a ProjMatrix>,
{
    factors.into_iter().fold(ProjMatrix::IDENTITY, |acc, m| acc * *m)
}
