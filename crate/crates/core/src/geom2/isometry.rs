use num_complex::Complex64;

use super::{BoundaryPoint, EquidistantRay, Geodesic, InteriorPoint, ProjMatrix};
use crate::error::{Error, Result};
use crate::tol;

/// Dynamical type of an isometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometryClass {
    Identity,
    Elliptic { fixed: InteriorPoint },
    Parabolic { fixed: BoundaryPoint },
    Hyperbolic { repeller: BoundaryPoint, attractor: BoundaryPoint },
}

impl IsometryClass {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, IsometryClass::Hyperbolic { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Elliptic { .. } => "elliptic",
            IsometryClass::Parabolic { .. } => "parabolic",
            IsometryClass::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

/// Threshold on |c| below which the quadratic for fixed points is treated as
/// degenerate (one root at ∞).
const C_ZERO: f64 = 1e-13;

fn c_is_zero(m: &ProjMatrix) -> bool {
    m.c.abs() <= C_ZERO * m.norm()
}

/// Classifies `m` by its trace, with fixed points.
pub fn classify(m: &ProjMatrix) -> IsometryClass {
    let tr = m.trace().abs();
    if m.dist_to_identity() < tol::COMPARE {
        return IsometryClass::Identity;
    }
    if tr > 2.0 + tol::CLASSIFY {
        let (repeller, attractor) = hyperbolic_fixed_points(m);
        return IsometryClass::Hyperbolic { repeller, attractor };
    }
    if tr < 2.0 - tol::CLASSIFY {
        return IsometryClass::Elliptic { fixed: elliptic_fixed_point(m) };
    }
    let fixed = if c_is_zero(m) { BoundaryPoint::Infinity } else { BoundaryPoint::Finite((m.a - m.d) / (2.0 * m.c)) };
    IsometryClass::Parabolic { fixed }
}

fn elliptic_fixed_point(m: &ProjMatrix) -> InteriorPoint {
    let tr = m.trace();
    let s = (4.0 - tr * tr).max(0.0).sqrt();
    let x = (m.a - m.d) / (2.0 * m.c);
    let y = (s / (2.0 * m.c)).abs();
    InteriorPoint::new(x, y).unwrap_or(InteriorPoint::I)
}

/// Repeller and attractor of a matrix with |trace| > 2.
fn hyperbolic_fixed_points(m: &ProjMatrix) -> (BoundaryPoint, BoundaryPoint) {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    if c_is_zero(m) {
        let finite = BoundaryPoint::Finite(b / (d - a));
        return if a.abs() > d.abs() { (finite, BoundaryPoint::Infinity) } else { (BoundaryPoint::Infinity, finite) };
    }
    // c x² + (d − a) x − b = 0
    let bb = d - a;
    let disc = (bb * bb + 4.0 * b * c).max(0.0);
    let sgn = if bb >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (bb + sgn * disc.sqrt());
    let (x1, x2) = (q / c, -b / q);
    if (c * x1 + d).abs() > 1.0 {
        (BoundaryPoint::Finite(x2), BoundaryPoint::Finite(x1))
    } else {
        (BoundaryPoint::Finite(x1), BoundaryPoint::Finite(x2))
    }
}

/// The oriented axis (repeller to attractor) of a hyperbolic isometry.
pub fn axis(m: &ProjMatrix) -> Result<Geodesic> {
    match classify(m) {
        IsometryClass::Hyperbolic { repeller, attractor } => Ok(Geodesic { src: repeller, dst: attractor }),
        other => Err(Error::NotHyperbolic { what: format!("{} with trace {}", other.name(), m.trace()) }),
    }
}

/// Half-turn about `p`.
pub fn reflection(p: &InteriorPoint) -> ProjMatrix {
    let (x, y) = (p.x(), p.y());
    ProjMatrix::raw(-x / y, (x * x + y * y) / y, -1.0 / y, x / y)
}

/// Centre of a half-turn. Fails unless |trace| < 1e−8.
pub fn half_turn_center(m: &ProjMatrix) -> Result<InteriorPoint> {
    if m.trace().abs() >= tol::HALF_TURN {
        return Err(Error::NotAHalfTurn { trace: m.trace() });
    }
    Ok(elliptic_fixed_point(m))
}

/// The point `(1 + i/k)·t(u)` with `t(u) = q/((1 + k⁻²)(1 + u))`.
pub fn point_on_ray(ray: &EquidistantRay, q: f64, u: f64) -> Result<InteriorPoint> {
    if !(q > 0.0) || !(u > 0.0) || !q.is_finite() || !u.is_finite() {
        return Err(Error::Domain(format!("point_on_ray needs q > 0 and u > 0, got q = {q}, u = {u}")));
    }
    let k = ray.k();
    ray.at(q / ((1.0 + 1.0 / (k * k)) * (1.0 + u)))
}

/// `diag(e^{φ/2}, e^{−φ/2})`, the translation by `φ` along `G(∞, 0)`.
/// It acts on the boundary as `x ↦ e^φ x`.
pub fn translation_along(phi: f64) -> ProjMatrix {
    let r = (0.5 * phi).exp();
    ProjMatrix::diag(r, 1.0 / r)
}

/// Inverse of [`translation_along`] on the translation group of `G(∞, 0)`.
pub fn v_coordinate(f: &ProjMatrix) -> Result<f64> {
    let f = f.canonical();
    let scale = f.norm();
    if f.b.abs() > tol::IN_V * scale || f.c.abs() > tol::IN_V * scale || !(f.a > 0.0 && f.d > 0.0) {
        return Err(Error::NotInV);
    }
    Ok((f.a / f.d).ln())
}

/// Conjugator `N` with `N·src = ∞`, `N·dst = 0`, `det N = 1`.
///
/// Orientation preserving, so the left side of `G` (its normal side) lands on
/// `Re z > 0`.
pub fn normalize_to(g: &Geodesic) -> ProjMatrix {
    match (g.src, g.dst) {
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(d)) => ProjMatrix::raw(1.0, -d, 0.0, 1.0),
        (BoundaryPoint::Finite(s), BoundaryPoint::Infinity) => ProjMatrix::raw(0.0, -1.0, 1.0, -s),
        (BoundaryPoint::Finite(s), BoundaryPoint::Finite(d)) => {
            let m = if d > s { ProjMatrix::raw(1.0, -d, 1.0, -s) } else { ProjMatrix::raw(-1.0, d, 1.0, -s) };
            let r = m.det().sqrt().recip();
            ProjMatrix::raw(m.a * r, m.b * r, m.c * r, m.d * r)
        }
        // Unreachable for a valid geodesic.
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => ProjMatrix::IDENTITY,
    }
}

/// [`normalize_to`] followed by the translation along `G(∞, 0)` that puts
/// `reference` at real part ±1, or at `i` when it lies on `G`.
pub fn normalize_to_with_reference(g: &Geodesic, reference: &InteriorPoint) -> ProjMatrix {
    let n = normalize_to(g);
    let z = n.apply_interior(reference);
    let scale = if z.x().abs() > tol::ON_AXIS * z.y() { z.x().abs() } else { z.y() };
    translation_along(-scale.ln()) * n
}

/// Signed distance from `p` to `g`, positive on the normal side.
pub fn signed_offset(p: &InteriorPoint, g: &Geodesic) -> f64 {
    let z = normalize_to(g).apply_interior(p);
    (z.x() / z.y()).asinh()
}

pub fn distance_to_geodesic(p: &InteriorPoint, g: &Geodesic) -> f64 {
    signed_offset(p, g).abs()
}

/// Interior intersection point of two geodesics, if their endpoints
/// interlace. Geodesics sharing an endpoint or ultraparallel give `None`.
pub fn intersect_geodesics(g1: &Geodesic, g2: &Geodesic) -> Result<Option<InteriorPoint>> {
    if g1.same_line(g2, tol::ANGULAR) {
        return Err(Error::DegenerateIntersection);
    }
    let n = normalize_to(g1);
    let (x1, x2) = match (n.apply_boundary(&g2.src), n.apply_boundary(&g2.dst)) {
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a, b),
        _ => return Ok(None),
    };
    if !(x1 * x2 < 0.0) {
        return Ok(None);
    }
    let z = Complex64::new(0.0, (-x1 * x2).sqrt());
    let w = n.inverse().apply_complex(z);
    Ok(Some(InteriorPoint::new(w.re, w.im)?))
}

/// Writes hyperbolic `g` as `t·s` with `t` the half-turn about `c` on its
/// axis and `s = t⁻¹·g`, again a half-turn about a point of the axis.
pub fn split_at_axis_point(g: &ProjMatrix, c: &InteriorPoint) -> Result<(ProjMatrix, ProjMatrix)> {
    let ax = axis(g)?;
    let distance = distance_to_geodesic(c, &ax);
    if distance >= tol::ON_AXIS {
        return Err(Error::PointNotOnAxis { distance, limit: tol::ON_AXIS });
    }
    let t = reflection(c);
    Ok((t, t.inverse() * *g))
}
