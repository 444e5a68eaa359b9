//! Signed areas of geodesic triangles, positivity of boundary cycles and the
//! area of a representation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom2::{BoundaryPoint, InteriorPoint, Point, ProjMatrix};
use crate::groups::Representation;
use crate::tol;

/// Three or more pairwise distinct boundary points, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCycle {
    points: Vec<BoundaryPoint>,
}

impl BoundaryCycle {
    pub fn new(points: Vec<BoundaryPoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::Domain(format!("a cycle needs at least 3 points, got {}", points.len())));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].angular_distance(&points[j]) < tol::ANGULAR {
                    return Err(Error::DuplicatePoints(i, j));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[BoundaryPoint] {
        &self.points
    }

    /// Strictly counterclockwise after the Cayley map.
    pub fn is_positive(&self) -> bool {
        ccw_cyclic(self.points.iter().map(|p| p.angle()))
    }
}

/// True iff the angles, taken cyclically from the first one, increase
/// strictly within one turn.
pub(crate) fn ccw_cyclic(angles: impl IntoIterator<Item = f64>) -> bool {
    let mut it = angles.into_iter();
    let Some(a0) = it.next() else { return true };
    let mut last = 0.0;
    for a in it {
        let d = (a - a0).rem_euclid(TAU);
        if d <= last {
            return false;
        }
        last = d;
    }
    true
}

pub fn is_positive_cycle(points: &[BoundaryPoint]) -> Result<bool> {
    Ok(BoundaryCycle::new(points.to_vec())?.is_positive())
}

fn cayley(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

/// Direction at interior `z` towards `w`, as a point of the unit circle's
/// closed disc after moving `z` to the centre.
fn direction(z: &InteriorPoint, w: &Point) -> Option<Complex64> {
    let (x, y) = (z.x(), z.y());
    let img = match w {
        Point::Interior(p) => cayley(Complex64::new((p.x() - x) / y, p.y() / y)),
        Point::Boundary(BoundaryPoint::Finite(t)) => cayley(Complex64::new((t - x) / y, 0.0)),
        Point::Boundary(BoundaryPoint::Infinity) => Complex64::new(1.0, 0.0),
    };
    (img.norm() > 1e-300).then_some(img)
}

fn coincide(p: &Point, q: &Point) -> bool {
    match (p, q) {
        (Point::Interior(a), Point::Interior(b)) => a.distance(b) < 1e-14,
        (Point::Boundary(a), Point::Boundary(b)) => a.angular_distance(b) < tol::ANGULAR,
        _ => false,
    }
}

/// Signed area of the geodesic triangle, positive for counterclockwise
/// vertex order. Ideal vertices contribute angle 0; degenerate triangles
/// have area 0.
pub fn triangle_area_gb(p1: &Point, p2: &Point, p3: &Point) -> f64 {
    let pts = [p1, p2, p3];
    for i in 0..3 {
        if coincide(pts[i], pts[(i + 1) % 3]) {
            return 0.0;
        }
    }
    let mut angles = [None; 3];
    for j in 0..3 {
        if let Point::Interior(z) = pts[j] {
            let (Some(d1), Some(d2)) = (direction(z, pts[(j + 1) % 3]), direction(z, pts[(j + 2) % 3])) else {
                return 0.0;
            };
            angles[j] = Some((d2 / d1).arg());
        }
    }
    let interior: Vec<f64> = angles.iter().flatten().copied().collect();
    if interior.is_empty() {
        let ideal: Vec<f64> = pts
            .iter()
            .map(|p| match p {
                Point::Boundary(b) => b.angle(),
                Point::Interior(_) => unreachable!(),
            })
            .collect();
        return if ccw_cyclic(ideal) { PI } else { -PI };
    }
    let lead = interior.iter().copied().fold(0.0f64, |m, t| if t.sin().abs() > m.sin().abs() { t } else { m });
    if lead.sin().abs() < 1e-15 {
        return 0.0;
    }
    let sg = if lead > 0.0 { 1.0 } else { -1.0 };
    sg * PI - interior.iter().sum::<f64>()
}

/// Sum of `area(v₀, v_j, v_{j+1})` for `j = 1..m−2`, the fan triangulation
/// of a closed polygon `v₀, …, v_{m−1}` (`v_m` repeats `v₀` and is ignored).
pub fn fan_sum<P, F>(vertices: &[P], mut area: F) -> Result<f64>
where
    F: FnMut(&P, &P, &P) -> Result<f64>,
{
    let m = vertices.len().saturating_sub(1);
    let mut s = 0.0;
    for j in 1..m.saturating_sub(1) {
        s += area(&vertices[0], &vertices[j], &vertices[j + 1])?;
    }
    Ok(s)
}

/// Area of a representation: the fan sums of the orbit polygons of `x0`
/// along the long relator(s).
pub fn rep_area(rep: &Representation, x0: &InteriorPoint) -> Result<f64> {
    let residual = rep.relation_residual();
    if !(residual < tol::INPUT_RESIDUAL) {
        return Err(Error::ResidualTooLarge { residual, limit: tol::INPUT_RESIDUAL });
    }
    let mut total = 0.0;
    for (_, w) in rep.presentation().main_relators() {
        let verts: Vec<Point> =
            rep.prefix_products(&w)?.iter().map(|m: &ProjMatrix| Point::Interior(m.apply_interior(x0))).collect();
        total += fan_sum(&verts, |a, b, c| Ok(triangle_area_gb(a, b, c)))?;
    }
    Ok(total)
}
