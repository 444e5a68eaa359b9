use std::fmt;

use num_complex::Complex64;

use super::ProjMatrix;
use crate::error::{Error, Result};
use crate::tol;

/// A point `x + iy` of the upper half-plane, `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteriorPoint {
    x: f64,
    y: f64,
}

impl InteriorPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || y <= tol::INTERIOR_Y {
            return Err(Error::NotInterior { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub const I: InteriorPoint = InteriorPoint { x: 0.0, y: 1.0 };

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Hyperbolic distance (curvature −1).
    pub fn distance(&self, other: &InteriorPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let num = dx * dx + dy * dy;
        // acosh(1 + t) written to stay accurate for small t
        let t = num / (2.0 * self.y * other.y);
        (t + (t * (t + 2.0)).sqrt()).ln_1p()
    }

    /// Image under the Cayley map `z ↦ (z − i)/(z + i)` onto the unit disc.
    pub fn to_disc(&self) -> Complex64 {
        let z = self.to_complex();
        (z - Complex64::i()) / (z + Complex64::i())
    }

    /// Inverse Cayley map from the open unit disc.
    pub fn from_disc(w: Complex64) -> Result<Self> {
        if !(w.norm() < 1.0) {
            return Err(Error::Domain(format!("{w} is not inside the unit disc")));
        }
        Self::from_complex(Complex64::i() * (Complex64::new(1.0, 0.0) + w) / (Complex64::new(1.0, 0.0) - w))
    }
}

impl fmt::Display for InteriorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.x, self.y)
    }
}

/// A point of ℝ ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Position on the unit circle after the Cayley map.
    pub fn to_disc(&self) -> Complex64 {
        match *self {
            BoundaryPoint::Infinity => Complex64::new(1.0, 0.0),
            BoundaryPoint::Finite(x) => {
                let z = Complex64::new(x, 0.0);
                (z - Complex64::i()) / (z + Complex64::i())
            }
        }
    }

    /// Counterclockwise angle in `[0, 2π)` on the boundary circle.
    pub fn angle(&self) -> f64 {
        let a = self.to_disc().arg();
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    /// Angular separation on the boundary circle, in `[0, π]`.
    pub fn angular_distance(&self, other: &BoundaryPoint) -> f64 {
        let d = (self.angle() - other.angle()).abs();
        d.min(std::f64::consts::TAU - d)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Either kind of point of the closed hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Interior(InteriorPoint),
    Boundary(BoundaryPoint),
}

impl From<InteriorPoint> for Point {
    fn from(p: InteriorPoint) -> Self {
        Point::Interior(p)
    }
}

impl From<BoundaryPoint> for Point {
    fn from(p: BoundaryPoint) -> Self {
        Point::Boundary(p)
    }
}

/// An oriented full geodesic from `src` to `dst`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    pub src: BoundaryPoint,
    pub dst: BoundaryPoint,
}

impl Geodesic {
    pub fn new(src: BoundaryPoint, dst: BoundaryPoint) -> Result<Self> {
        if src.angular_distance(&dst) < tol::ANGULAR {
            return Err(Error::Domain("geodesic endpoints coincide".into()));
        }
        Ok(Self { src, dst })
    }

    pub fn reversed(&self) -> Self {
        Self { src: self.dst, dst: self.src }
    }

    /// Same unordered endpoint pair.
    pub fn same_line(&self, other: &Geodesic, tolerance: f64) -> bool {
        let direct =
            self.src.angular_distance(&other.src) < tolerance && self.dst.angular_distance(&other.dst) < tolerance;
        let swapped =
            self.src.angular_distance(&other.dst) < tolerance && self.dst.angular_distance(&other.src) < tolerance;
        direct || swapped
    }
}

/// The ray `(1 + i/k)·ℝ⁺`: a curve equidistant from `G(∞, 0)` on the side
/// `Re z > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquidistantRay {
    k: f64,
}

impl EquidistantRay {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!("equidistant slope k = {k} must be positive")));
        }
        Ok(Self { k })
    }

    /// The ray through an interior point with positive real part.
    pub fn through(p: &InteriorPoint) -> Result<Self> {
        Self::new(p.x() / p.y())
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The point `(1 + i/k)·t`.
    pub fn at(&self, t: f64) -> Result<InteriorPoint> {
        InteriorPoint::new(t, t / self.k)
    }

    /// Ray coordinate `t` of a point on the ray.
    pub fn coordinate(p: &InteriorPoint) -> f64 {
        p.x()
    }
}

impl ProjMatrix {
    pub fn apply_interior(&self, z: &InteriorPoint) -> InteriorPoint {
        let w = self.apply_complex(z.to_complex());
        // The image of an interior point under det > 0 stays interior; clamp
        // only against underflow of the imaginary part.
        InteriorPoint { x: w.re, y: w.im.max(f64::MIN_POSITIVE) }
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_boundary(&self, p: &BoundaryPoint) -> BoundaryPoint {
        match *p {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Interior(z) => Point::Interior(self.apply_interior(z)),
            Point::Boundary(b) => Point::Boundary(self.apply_boundary(b)),
        }
    }
}
