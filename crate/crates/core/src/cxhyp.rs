//! Complex hyperbolic plane as the negative lines of `ℂ³` with the form
//! `⟨p, q⟩ = p₁q̄₁ + p₂q̄₂ − p₃q̄₃`, triangle areas, and the area invariant of
//! representations into its isometry group.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom2::{BoundaryPoint, InteriorPoint, ProjMatrix};
use crate::groups::{GroupElement, Kind, Representation};
use crate::invariants::{ccw_cyclic, fan_sum};
use crate::tol;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermVector(pub [C; 3]);

/// Sign of `⟨p, p⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {
    Negative,
    Isotropic,
    Positive,
}

impl HermVector {
    pub fn new(z1: C, z2: C, z3: C) -> Self {
        Self([z1, z2, z3])
    }

    pub fn from_real(x: [f64; 3]) -> Self {
        Self(x.map(|t| C::new(t, 0.0)))
    }

    /// `⟨p, p⟩`, real.
    pub fn norm_sq(&self) -> f64 {
        herm_product(self, self).re
    }

    /// Euclidean length of the coordinate vector.
    pub fn euclid(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn kind(&self) -> VectorKind {
        let q = self.norm_sq();
        let scale = self.euclid().powi(2);
        if q.abs() <= 1e-10 * scale {
            VectorKind::Isotropic
        } else if q < 0.0 {
            VectorKind::Negative
        } else {
            VectorKind::Positive
        }
    }

    pub fn scale(&self, s: C) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl fmt::Display for HermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

pub fn herm_product(p: &HermVector, q: &HermVector) -> C {
    p.0[0] * q.0[0].conj() + p.0[1] * q.0[1].conj() - p.0[2] * q.0[2].conj()
}

/// Pairwise products `g_ij = ⟨p_i, p_j⟩` of three vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramTriple(pub [[C; 3]; 3]);

impl GramTriple {
    pub fn new(p: [&HermVector; 3]) -> Self {
        let mut g = [[ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = herm_product(p[i], p[j]);
            }
        }
        Self(g)
    }

    pub fn det(&self) -> f64 {
        let g = &self.0;
        let d = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        d.re
    }

    /// `−g₁₂ g₂₃ g₃₁`.
    pub fn triple(&self) -> C {
        -(self.0[0][1] * self.0[1][2] * self.0[2][0])
    }
}

/// Integral of the Kähler potential normalized at `u` along the geodesic
/// segment from `p1` to `p2`, equal to `−π/2 + ½·arg X` for
/// `X = ⟨u,p2⟩⟨p2,p1⟩/⟨u,p1⟩` with `arg X ∈ (0, 2π]`, i.e. `½·Arg(−X)`.
pub fn kahler_segment_integral(u: &HermVector, p1: &HermVector, p2: &HermVector) -> Result<f64> {
    for (name, p) in [("u", u), ("p1", p1), ("p2", p2)] {
        if p.kind() != VectorKind::Negative {
            return Err(Error::Degenerate(format!("{name} is not an interior point")));
        }
    }
    let (up2, p2p1, up1) = (herm_product(u, p2), herm_product(p2, p1), herm_product(u, p1));
    if up1.norm() == 0.0 || up2.norm() == 0.0 || p2p1.norm() == 0.0 {
        return Err(Error::Degenerate("vanishing inner product".into()));
    }
    Ok(0.5 * (-(up2 * p2p1 / up1)).arg())
}

/// `½·arg(−g₁₂g₂₃g₃₁)`, the signed area of a triangle with vertices in the
/// closed ball, in `[−π/2, π/2]`.
pub fn triangle_area31(p1: &HermVector, p2: &HermVector, p3: &HermVector) -> Result<f64> {
    for p in [p1, p2, p3] {
        if p.kind() == VectorKind::Positive {
            return Err(Error::NotAPointTriple { real_part: f64::NAN });
        }
    }
    let x = GramTriple::new([p1, p2, p3]).triple();
    let scale = p1.euclid().powi(2) * p2.euclid().powi(2) * p3.euclid().powi(2);
    if x.norm() <= 1e-14 * scale {
        // two coinciding isotropic vertices
        return Ok(0.0);
    }
    if x.re < -tol::GRAM_GUARD * x.norm() {
        return Err(Error::NotAPointTriple { real_part: x.re / x.norm() });
    }
    Ok(0.5 * C::new(x.re.max(0.0), x.im).arg())
}

/// Whether isotropic points lie in one complex geodesic and run
/// counterclockwise around its boundary circle.
pub fn is_positive_cycle_cg(points: &[HermVector]) -> Result<bool> {
    if points.len() < 3 {
        return Err(Error::Domain(format!("a cycle needs at least 3 points, got {}", points.len())));
    }
    for (i, p) in points.iter().enumerate() {
        if p.kind() != VectorKind::Isotropic {
            return Err(Error::Domain(format!("point {i} is not isotropic")));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if proportional(&points[i], &points[j]) {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    let (p1, p2) = (&points[0], &points[1]);
    for p in &points[2..] {
        let m = det3([p1.0, p2.0, p.0]);
        if m.norm() > 1e-8 * p1.euclid() * p2.euclid() * p.euclid() {
            return Ok(false);
        }
    }
    let frame = SliceFrame::new(p1, p2)?;
    Ok(ccw_cyclic(points.iter().map(|p| frame.coordinate(p).arg())))
}

fn proportional(p: &HermVector, q: &HermVector) -> bool {
    let cross =
        [p.0[1] * q.0[2] - p.0[2] * q.0[1], p.0[2] * q.0[0] - p.0[0] * q.0[2], p.0[0] * q.0[1] - p.0[1] * q.0[0]];
    let c = cross.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    c <= 1e-10 * p.euclid() * q.euclid()
}

fn det3(r: [[C; 3]; 3]) -> C {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// Orthonormal frame `e₊, e₋` of the complex geodesic spanned by two
/// non-proportional isotropic vectors, with disc coordinate
/// `w = ⟨p, e₊⟩ / (−⟨p, e₋⟩)`.
pub struct SliceFrame {
    plus: HermVector,
    minus: HermVector,
}

impl SliceFrame {
    pub fn new(p1: &HermVector, p2: &HermVector) -> Result<Self> {
        let g12 = herm_product(p1, p2);
        if g12.norm() <= 1e-14 * p1.euclid() * p2.euclid() {
            return Err(Error::Degenerate("isotropic pair is orthogonal".into()));
        }
        let scale = ONE / (2f64.sqrt() * g12.norm());
        let lp2 = p2.scale(g12);
        Ok(Self { plus: p1.add(&lp2).scale(scale), minus: p1.add(&lp2.scale(-ONE)).scale(scale) })
    }

    pub fn coordinate(&self, p: &HermVector) -> C {
        herm_product(p, &self.plus) / -herm_product(p, &self.minus)
    }
}

/// Lift of a half-plane point: `(cay z, 0, 1)` with `cay z = (z − i)/(z + i)`.
pub fn embed_point(z: &InteriorPoint) -> HermVector {
    HermVector::new(z.to_disc(), ZERO, ONE)
}

pub fn embed_boundary_point(x: &BoundaryPoint) -> HermVector {
    HermVector::new(x.to_disc(), ZERO, ONE)
}

/// A 3×3 complex matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat3(pub [[C; 3]; 3]);

impl CMat3 {
    pub const IDENTITY: CMat3 = CMat3([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]);

    pub fn apply(&self, p: &HermVector) -> HermVector {
        let m = &self.0;
        let z = &p.0;
        HermVector([0, 1, 2].map(|i| m[i][0] * z[0] + m[i][1] * z[1] + m[i][2] * z[2]))
    }

    pub fn det(&self) -> C {
        det3(self.0)
    }

    /// Inverse by the adjugate.
    pub fn inverse(&self) -> CMat3 {
        let m = &self.0;
        let d = self.det();
        let mut out = [[ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                out[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
            }
        }
        CMat3(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `min over unit λ` of `‖self − λ·other‖∞`, with `λ` from the
    /// Frobenius pairing.
    pub fn phase_distance(&self, other: &CMat3) -> f64 {
        let mut pairing = ZERO;
        for i in 0..3 {
            for j in 0..3 {
                pairing += other.0[i][j].conj() * self.0[i][j];
            }
        }
        let lambda = if pairing.norm() > 0.0 { pairing / pairing.norm() } else { ONE };
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - lambda * other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Defect of `Mᴴ J M = J` for `J = diag(1, 1, −1)`.
    pub fn unitarity_defect(&self) -> f64 {
        let j = [1.0, 1.0, -1.0];
        let m = &self.0;
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                let mut s = ZERO;
                for k in 0..3 {
                    s += m[k][a].conj() * j[k] * m[k][b];
                }
                let target = if a == b { j[a] } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

impl Mul for CMat3 {
    type Output = CMat3;

    fn mul(self, o: CMat3) -> CMat3 {
        let mut out = [[ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        CMat3(out)
    }
}

impl GroupElement for CMat3 {
    fn identity() -> Self {
        CMat3::IDENTITY
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn distance_to_identity(&self) -> f64 {
        self.phase_distance(&CMat3::IDENTITY)
    }

    fn distance(&self, other: &Self) -> f64 {
        self.phase_distance(other)
    }
}

/// Block `C M C⁻¹` on `(z₁, z₃)` with `C = [1 −i; 1 i]`, fixing `z₂`, scaled
/// by `s`.
fn embed_matrix(m: &ProjMatrix, s: C) -> CMat3 {
    let i = C::i();
    let (a, b, c, d) = (C::from(m.a), C::from(m.b), C::from(m.c), C::from(m.d));
    // C M = [a − ic, b − id; a + ic, b + id], C⁻¹ = (1/2i)[i i; −1 1]
    let (p, q, r, t) = (a - i * c, b - i * d, a + i * c, b + i * d);
    let h = ONE / (2.0 * i);
    let alpha = h * (p * i - q) * s;
    let beta = h * (p * i + q) * s;
    let gamma = h * (r * i - t) * s;
    let delta = h * (r * i + t) * s;
    CMat3([[alpha, ZERO, beta], [ZERO, ONE, ZERO], [gamma, ZERO, delta]])
}

/// The image of a single isometry, with the sign of the block as stored.
pub fn embed_isometry(m: &ProjMatrix) -> CMat3 {
    embed_matrix(m, ONE)
}

/// Embeds a representation into the stabilizer of the complex geodesic
/// `{z₂ = 0}`. Block signs (for `H_n`, the factor `±i` turning each
/// half-turn into an honest involution) are chosen so that every relator
/// maps to the identity matrix, not just to a scalar.
pub fn embed_fuchsian(rep: &Representation) -> Result<Representation<CMat3>> {
    let n = rep.n();
    let i = C::i();
    let mut scales: Vec<C> = match rep.kind() {
        Kind::H => vec![i; n],
        Kind::G => vec![ONE; n - 1],
    };
    let build = |scales: &[C]| {
        let imgs = rep.images().iter().zip(scales).map(|(m, s)| embed_matrix(m, *s)).collect();
        Representation::from_parts(rep.presentation(), imgs)
    };
    let (_, long) = rep.presentation().main_relators().remove(0);
    let value = build(&scales)?.eval_word(&long)?;
    if value.0[0][0].re < 0.0 {
        let last = scales.len() - 1;
        let k = if rep.kind() == Kind::H { last } else { 0 };
        scales[k] = -scales[k];
    }
    build(&scales)
}

/// Exact relator residual (entrywise distance to the identity matrix).
pub fn exact_residual(rep3: &Representation<CMat3>) -> Result<f64> {
    let mut worst = 0.0f64;
    for (_, w) in rep3.presentation().relators() {
        let m = rep3.eval_word(&w)?;
        let mut d = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                let target = if a == b { ONE } else { ZERO };
                d = d.max((m.0[a][b] - target).norm());
            }
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

fn fan_area(rep3: &Representation<CMat3>, x0: &HermVector) -> Result<f64> {
    let mut total = 0.0;
    for (_, w) in rep3.presentation().main_relators() {
        let verts: Vec<HermVector> = rep3.prefix_products(&w)?.iter().map(|m| m.apply(x0)).collect();
        total += fan_sum(&verts, triangle_area31)?;
    }
    Ok(total)
}

/// Fan-cocycle area of a representation into the isometry group, from the
/// orbit of an interior point `x0`.
pub fn toledo_invariant(rep3: &Representation<CMat3>, x0: &HermVector) -> Result<f64> {
    let residual = rep3.relation_residual();
    if !(residual < tol::INPUT_RESIDUAL) {
        return Err(Error::ResidualTooLarge { residual, limit: tol::INPUT_RESIDUAL });
    }
    if x0.kind() != VectorKind::Negative {
        return Err(Error::Domain("base point must be interior".into()));
    }
    match fan_area(rep3, x0) {
        Ok(a) => Ok(a),
        Err(_) => {
            // deterministic jitter, one retry
            let shift = HermVector::new(C::new(1e-3, 0.0), C::new(0.0, 1e-3), ZERO).scale(C::from(x0.euclid()));
            let x1 = x0.add(&shift);
            if x1.kind() != VectorKind::Negative {
                return Err(Error::Degenerate("jittered base point left the ball".into()));
            }
            fan_area(rep3, &x1)
        }
    }
}
