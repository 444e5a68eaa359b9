//! Global chart `ℝ^{n−6} → fibre` over a hyperelliptic representation.
//!
//! Work in the frame where the axis of `a_1 a_n` is `G(∞, 0)` with repeller
//! `∞`. The half-turn centres `q_k` of `ρ₁` sit on rays `D_k` of slope `k_k`.
//! A fibre member replaces `q_k` by `q'_k` on the same ray: for
//! `k = n−2, …, 5` the admissible positions form an open segment `(0, t_d)`
//! of the ray coordinate, and the last four positions are then forced up to
//! one parameter, which the alternating relation fixes.

use super::closing::{
    four_point_forward, four_point_invert, four_point_p4, two_point_solve, FourPointConfig, TwoPointInput,
};
use super::reconstruct::reconstruct;
use crate::error::{Error, Result};
use crate::fibration::fibration;
use crate::geom2::{
    axis, half_turn_center, normalize_to, product, reflection, BoundaryPoint, EquidistantRay, InteriorPoint, ProjMatrix,
};
use crate::groups::{Kind, Presentation, Representation};
use crate::tol;

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn logit(s: f64) -> f64 {
    (s / (1.0 - s)).ln()
}

/// Options for [`fibre_point_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibreOptions {
    /// Provisional parameter of `p_4` before the final correction. Any
    /// positive value gives the same result up to rounding.
    pub provisional_v: f64,
}

impl Default for FibreOptions {
    fn default() -> Self {
        Self { provisional_v: 1.0 }
    }
}

/// `ρ₁` moved into the normalized frame.
struct Frame {
    n: usize,
    norm: ProjMatrix,
    /// Whether the representation was mirrored to make it positively oriented.
    mirrored: bool,
    a: Vec<ProjMatrix>,
    q: Vec<InteriorPoint>,
}

impl Frame {
    fn new(rep1: &Representation) -> Result<Self> {
        if rep1.kind() != Kind::H {
            return Err(Error::InvalidInput("the base must be an H_n representation".into()));
        }
        let residual = rep1.relation_residual();
        if !(residual < tol::INPUT_RESIDUAL) {
            return Err(Error::ResidualTooLarge { residual, limit: tol::INPUT_RESIDUAL });
        }
        let n = rep1.n();
        let frame = Self::build(rep1, false)?;
        if frame.q[1].x() > 0.0 {
            return Ok(frame);
        }
        let mirror = rep1.map(|m| m.mirrored());
        let frame = Self::build(&mirror, true)?;
        for k in 2..=n - 2 {
            if !(frame.q[k - 1].x() > 0.0) {
                return Err(Error::FibreConstruction(format!(
                    "centre of r_{k} is not on the normal side of the axis (Re = {})",
                    frame.q[k - 1].x()
                )));
            }
        }
        Ok(frame)
    }

    fn build(rep1: &Representation, mirrored: bool) -> Result<Self> {
        let n = rep1.n();
        let ax = axis(&(rep1.at(1) * rep1.at(n)))?;
        let norm = normalize_to(&ax);
        let a: Vec<ProjMatrix> = rep1.images().iter().map(|m| norm.conj(m)).collect();
        let q = a.iter().map(half_turn_center).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, norm, mirrored, a, q })
    }

    fn a(&self, k: usize) -> ProjMatrix {
        self.a[k - 1]
    }

    fn q(&self, k: usize) -> InteriorPoint {
        self.q[k - 1]
    }

    fn slope(&self, k: usize) -> f64 {
        let q = self.q(k);
        q.x() / q.y()
    }

    fn ray(&self, k: usize) -> Result<EquidistantRay> {
        EquidistantRay::new(self.slope(k))
            .map_err(|_| Error::FibreConstruction(format!("centre of r_{k} is on the wrong side of the axis")))
    }

    /// `(b, e) = (a_{n−1}(∞), a_{n−1}(0))`.
    fn start(&self) -> Result<(f64, f64)> {
        let m = self.a(self.n - 1);
        let b = finite(m.apply_boundary(&BoundaryPoint::Infinity))?;
        let e = finite(m.apply_boundary(&BoundaryPoint::Finite(0.0)))?;
        if !(0.0 < b && b < e) {
            return Err(Error::FibreConstruction(format!("expected 0 < b < e, got b = {b}, e = {e}")));
        }
        Ok((b, e))
    }

    /// Ray coordinate of the endpoint `d_k` of the admissible segment.
    fn segment_end(&self, k: usize, b: f64) -> f64 {
        let kk = self.slope(k);
        b / (1.0 + 1.0 / (kk * kk))
    }

    /// Segment fractions `σ_k` of the base points `q_k`, `k = n−2, …, 5`
    /// (returned in the order `k = 5, …, n−2`).
    fn base_fractions(&self) -> Result<Vec<f64>> {
        let (mut b, mut e) = self.start()?;
        let mut out = vec![0.0; self.n - 6];
        for k in (5..=self.n - 2).rev() {
            let sigma = self.q(k).x() / self.segment_end(k, b);
            if !(sigma > 0.0 && sigma < 1.0) {
                return Err(Error::FibreConstruction(format!("base point q_{k} is outside its segment ({sigma})")));
            }
            out[k - 5] = sigma;
            (b, e) = step(&self.a(k), b, e)?;
        }
        Ok(out)
    }

    /// `m` moved back to the original frame.
    fn export(&self, m: &ProjMatrix) -> ProjMatrix {
        let m = self.norm.inverse().conj(m);
        if self.mirrored {
            m.mirrored()
        } else {
            m
        }
    }
}

fn finite(p: BoundaryPoint) -> Result<f64> {
    p.finite().ok_or_else(|| Error::FibreConstruction("boundary point went to infinity".into()))
}

fn step(m: &ProjMatrix, b: f64, e: f64) -> Result<(f64, f64)> {
    Ok((finite(m.apply_boundary(&BoundaryPoint::Finite(b)))?, finite(m.apply_boundary(&BoundaryPoint::Finite(e)))?))
}

/// Centres `q'_1..q'_{n−2}` of the partner representation in the frame.
struct Partner {
    q: Vec<InteriorPoint>,
}

/// The last four centres for a given `v`: returns `p_1..p_4`.
fn close_up(frame: &Frame, x: &ProjMatrix, cfg: &FourPointConfig, e4: f64, v: f64) -> Result<[InteriorPoint; 4]> {
    let p4 = four_point_p4(cfg, v)?;
    let r4 = reflection(&p4);
    let (b3, e3) = step(&r4, cfg.b, e4)?;
    let two = two_point_solve(&TwoPointInput::new(b3, e3, cfg.k2, cfg.k3)?)?;
    let p = frame.a(frame.n) * *x * r4 * reflection(&two.p3) * reflection(&two.p2);
    let r1 = p.inverse();
    let scale = r1.norm();
    if r1.trace().abs() > 1e-7 * scale {
        return Err(Error::FibreConstruction(format!("closing element has trace {:e}", r1.trace())));
    }
    // drop the rounding in the trace before reading off the centre
    let h = 0.5 * (r1.a - r1.d);
    let p1 = half_turn_center(&ProjMatrix::raw(h, r1.b, r1.c, -h))?;
    if p1.x().abs() > 1e-7 * p1.y() {
        return Err(Error::FibreConstruction(format!("closing centre {p1} is off the axis")));
    }
    Ok([p1, two.p2, two.p3, p4])
}

fn alternating_log_sum(frame: &Frame, q: &[InteriorPoint]) -> f64 {
    (1..=frame.n - 2)
        .map(|j| {
            let phi = (q[j - 1].to_complex().norm() / frame.q(j).to_complex().norm()).ln();
            if j % 2 == 1 {
                -phi
            } else {
                phi
            }
        })
        .sum()
}

fn build_partner(frame: &Frame, lambda: &[f64], opts: &FibreOptions) -> Result<Partner> {
    let n = frame.n;
    if lambda.len() != n - 6 {
        return Err(Error::InvalidInput(format!("expected {} chart parameters, got {}", n - 6, lambda.len())));
    }
    if lambda.iter().any(|l| !l.is_finite()) {
        return Err(Error::InvalidInput("chart parameters must be finite".into()));
    }
    let base = frame.base_fractions()?;
    let (mut b, mut e) = frame.start()?;
    let mut q = vec![InteriorPoint::I; n - 2];
    let mut chain = vec![frame.a(n - 1)];
    for k in (5..=n - 2).rev() {
        let sigma = logistic(lambda[k - 5] + logit(base[k - 5]));
        let qk = frame.ray(k)?.at(sigma * frame.segment_end(k, b))?;
        let rk = reflection(&qk);
        (b, e) = step(&rk, b, e)?;
        q[k - 1] = qk;
        chain.push(rk);
    }
    let x = product(&chain);
    let cfg = FourPointConfig::new(b, e, frame.slope(2), frame.slope(3), frame.slope(4))
        .map_err(|err| Error::FibreConstruction(format!("final interval: {err}")))?;
    let place = |q: &mut Vec<InteriorPoint>, v: f64| -> Result<()> {
        let last = close_up(frame, &x, &cfg, e, v)?;
        q[..4].copy_from_slice(&last);
        Ok(())
    };
    let v0 = opts.provisional_v;
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::InvalidInput(format!("provisional v must be positive, got {v0}")));
    }
    place(&mut q, v0)?;
    // Along the one-parameter family the alternating sum changes by −ln w(v).
    let target = alternating_log_sum(frame, &q) + four_point_forward(&cfg, v0)?.ln();
    let v = four_point_invert(&cfg, target.exp())?;
    place(&mut q, v)?;
    let sum = alternating_log_sum(frame, &q);
    if sum.abs() > tol::FIBRE_PAIR {
        return Err(Error::FibreConstruction(format!("alternating sum {sum:e} after correction")));
    }
    Ok(Partner { q })
}

/// The partner `ρ₂` of `rep1` at chart parameters `lambda` (length `n − 6`).
pub fn fibre_partner(rep1: &Representation, lambda: &[f64], opts: &FibreOptions) -> Result<Representation> {
    let frame = Frame::new(rep1)?;
    let partner = build_partner(&frame, lambda, opts)?;
    let n = frame.n;
    let mut images: Vec<ProjMatrix> = partner.q.iter().map(|p| frame.export(&reflection(p))).collect();
    images.push(rep1.at(n - 1));
    images.push(rep1.at(n));
    Representation::new(Presentation::h(n)?, images)
}

/// The representation of `G_n` over `rep1` at chart parameters `lambda`.
pub fn fibre_point_with(rep1: &Representation, lambda: &[f64], opts: &FibreOptions) -> Result<Representation> {
    let rep2 = fibre_partner(rep1, lambda, opts)?;
    reconstruct(rep1, &rep2)
}

pub fn fibre_point(rep1: &Representation, lambda: &[f64]) -> Result<Representation> {
    fibre_point_with(rep1, lambda, &FibreOptions::default())
}

/// Inverse of the chart: the parameters `λ` of a representation of `G_n`
/// relative to its own first hyperelliptic image.
pub fn chart_coordinates(rep_g: &Representation) -> Result<Vec<f64>> {
    let fib = fibration(rep_g)?;
    let frame = Frame::new(&fib.rep1)?;
    let base = frame.base_fractions()?;
    let n = frame.n;
    let to_frame = |m: &ProjMatrix| {
        let m = if frame.mirrored { m.mirrored() } else { *m };
        frame.norm.conj(&m)
    };
    let (mut b, mut e) = frame.start()?;
    let mut lambda = vec![0.0; n - 6];
    for k in (5..=n - 2).rev() {
        let ck = to_frame(&fib.rep2.at(k));
        let qk = half_turn_center(&ck)?;
        let sigma = qk.x() / frame.segment_end(k, b);
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::FibreConstruction(format!("centre of c_{k} is outside its segment ({sigma})")));
        }
        lambda[k - 5] = logit(sigma) - logit(base[k - 5]);
        (b, e) = step(&ck, b, e)?;
    }
    Ok(lambda)
}
