//! The two closed-form steps of the fibre construction, in the normalized
//! frame where the relevant axis is `G(∞, 0)` and every half-turn centre
//! lies on a ray `(1 + i/k)·ℝ⁺`.

use crate::error::{Error, Result};
use crate::geom2::{point_on_ray, reflection, BoundaryPoint, EquidistantRay, InteriorPoint};
use crate::invariants::is_positive_cycle;
use crate::roots;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPointInput {
    pub b3: f64,
    pub e3: f64,
    pub k2: f64,
    pub k3: f64,
}

impl TwoPointInput {
    pub fn new(b3: f64, e3: f64, k2: f64, k3: f64) -> Result<Self> {
        if !(0.0 < b3 && b3 < e3 && e3.is_finite()) {
            return Err(Error::Domain(format!("need 0 < b3 < e3, got b3 = {b3}, e3 = {e3}")));
        }
        if !(k2 > 0.0 && k3 > 0.0 && k2.is_finite() && k3.is_finite()) {
            return Err(Error::Domain(format!("slopes must be positive, got k2 = {k2}, k3 = {k3}")));
        }
        Ok(Self { b3, e3, k2, k3 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPointSolution {
    pub u: f64,
    pub t2: f64,
    pub t3: f64,
    pub p2: InteriorPoint,
    pub p3: InteriorPoint,
}

/// Coefficients of `(1 + k3²)u² + u + (1 − b3/e3)(k3²u − k2²u − k2²) = 0`.
pub fn two_point_quadratic(input: &TwoPointInput) -> [f64; 3] {
    let TwoPointInput { b3, e3, k2, k3 } = *input;
    let m = 1.0 - b3 / e3;
    let (k2s, k3s) = (k2 * k2, k3 * k3);
    [1.0 + k3s, 1.0 + m * (k3s - k2s), -m * k2s]
}

/// Places `p3` on `D_3` and `p2` on `D_2` so that `R(p2)R(p3)` sends
/// `(b3, e3)` to `(∞, 0)`.
pub fn two_point_solve(input: &TwoPointInput) -> Result<TwoPointSolution> {
    let [a, b, c] = two_point_quadratic(input);
    let u = roots::unique_positive_root(a, b, c).map_err(|e| Error::Consistency(format!("quadratic for u: {e}")))?;
    let TwoPointInput { b3, k2, k3, .. } = *input;
    let k3m2 = 1.0 / (k3 * k3);
    let t3 = b3 / ((1.0 + k3m2) * (1.0 + u));
    let t2 = b3 * u / ((1.0 + u) * (k3m2 + u + k3m2 * u));
    let p2 = EquidistantRay::new(k2)?.at(t2)?;
    let p3 = EquidistantRay::new(k3)?.at(t3)?;
    Ok(TwoPointSolution { u, t2, t3, p2, p3 })
}

/// Checks the output of [`two_point_solve`] by direct Möbius evaluation:
/// returns the largest defect of `R(p2)b² = ∞`, `R(p2)e² = 0` (measured as
/// `1/|R(p2)b²|` and `|R(p2)e²|/e3`) and whether the six-point cycle
/// `∞, 0, b², e², b³, e³` is positive.
pub fn two_point_check(input: &TwoPointInput, out: &TwoPointSolution) -> Result<(f64, bool)> {
    let r2 = reflection(&out.p2);
    let r3 = reflection(&out.p3);
    let b3 = BoundaryPoint::Finite(input.b3);
    let e3 = BoundaryPoint::Finite(input.e3);
    let b2 = r3.apply_boundary(&b3);
    let e2 = r3.apply_boundary(&e3);
    let to_inf = match r2.apply_boundary(&b2) {
        BoundaryPoint::Infinity => 0.0,
        BoundaryPoint::Finite(x) => 1.0 / x.abs(),
    };
    let to_zero = match r2.apply_boundary(&e2) {
        BoundaryPoint::Infinity => f64::INFINITY,
        BoundaryPoint::Finite(x) => x.abs() / input.e3,
    };
    let cycle = [BoundaryPoint::Infinity, BoundaryPoint::Finite(0.0), b2, e2, b3, e3];
    Ok((to_inf.max(to_zero), is_positive_cycle(&cycle)?))
}

/// Data of the last step: axis `G(∞, 0)`, the interval `0 < b < e` still to
/// be closed up, and the slopes of the rays `D_2, D_3, D_4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourPointConfig {
    pub b: f64,
    pub e: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
}

impl FourPointConfig {
    pub fn new(b: f64, e: f64, k2: f64, k3: f64, k4: f64) -> Result<Self> {
        if !(0.0 < b && b < e && e.is_finite()) {
            return Err(Error::Domain(format!("need 0 < b < e, got b = {b}, e = {e}")));
        }
        if ![k2, k3, k4].iter().all(|k| *k > 0.0 && k.is_finite()) {
            return Err(Error::Domain("slopes must be positive".into()));
        }
        Ok(Self { b, e, k2, k3, k4 })
    }

    /// `(α, β, γ, δ)` with the relation written as
    /// `αv·w(w−v) + β·w(w−v) + γ(v+1)(w−v) − δ·v(v+1) = 0`.
    fn coefficients(&self) -> (f64, f64, f64, f64) {
        let FourPointConfig { b, e, k2, k3, k4 } = *self;
        let k4s = k4 * k4;
        let (k2s, k3s) = (k2 * k2, k3 * k3);
        (e * (1.0 + k4s) / (e - b), e / (e - b) + k4s, 1.0 + k2s + k3s, k2s * k3s)
    }

    /// Left-hand side of the relation between `v` and `w`.
    pub fn relation(&self, v: f64, w: f64) -> f64 {
        let (al, be, ga, de) = self.coefficients();
        al * v * w * (w - v) + be * w * (w - v) + ga * (v + 1.0) * (w - v) - de * v * (v + 1.0)
    }

    /// Sum of the absolute values of the terms of [`Self::relation`], a scale
    /// for relative residuals.
    pub fn relation_scale(&self, v: f64, w: f64) -> f64 {
        let (al, be, ga, de) = self.coefficients();
        (al * v * w * (w - v)).abs()
            + (be * w * (w - v)).abs()
            + (ga * (v + 1.0) * (w - v)).abs()
            + (de * v * (v + 1.0)).abs()
    }
}

/// The unique `w > v` solving the relation. For fixed `v` the relation is
/// a quadratic in `w` with negative constant term, so its positive root is
/// taken in closed form.
pub fn four_point_forward(cfg: &FourPointConfig, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("v must be positive, got {v}")));
    }
    let (al, be, ga, de) = cfg.coefficients();
    let a = al * v + be;
    let b = -al * v * v - be * v + ga * (v + 1.0);
    let c = -v * (v + 1.0) * (ga + de);
    roots::unique_positive_root(a, b, c)
}

/// `dw/dv` along the solution curve.
fn four_point_slope(cfg: &FourPointConfig, v: f64, w: f64) -> f64 {
    let (al, be, ga, de) = cfg.coefficients();
    let fv = al * w * w - 2.0 * al * v * w - be * w + ga * w - (ga + de) * (2.0 * v + 1.0);
    let fw = 2.0 * al * v * w - al * v * v + 2.0 * be * w - be * v + ga * (v + 1.0);
    -fv / fw
}

const INVERT_LO: f64 = 1e-12;
const INVERT_HI: f64 = 1e12;

/// The unique `v > 0` with `four_point_forward(cfg, v) = w`, by safeguarded
/// Newton iteration on `[1e−12, 1e12]`.
pub fn four_point_invert(cfg: &FourPointConfig, w: f64) -> Result<f64> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("target w must be positive, got {w}")));
    }
    let f = |v: f64| -> (f64, f64) {
        match four_point_forward(cfg, v) {
            Ok(wv) => (wv - w, four_point_slope(cfg, v, wv)),
            Err(_) => (f64::NAN, f64::NAN),
        }
    };
    roots::newton_bisect(f, INVERT_LO, INVERT_HI, 1e-15)
}

/// Point `p4 = (1 + i/k4)·t4` with `t4 = b/((1 + k4⁻²)(1 + v))`.
pub fn four_point_p4(cfg: &FourPointConfig, v: f64) -> Result<InteriorPoint> {
    point_on_ray(&EquidistantRay::new(cfg.k4)?, cfg.b, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_two_point() {
        let input = TwoPointInput::new(1.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(two_point_quadratic(&input), [2.0, 1.0, -0.5]);
        let out = two_point_solve(&input).unwrap();
        assert!((out.u - (5f64.sqrt() - 1.0) / 4.0).abs() < 1e-15);
        assert!((out.t3 - 0.381966).abs() < 1e-6);
        assert!((out.t2 - 0.145898).abs() < 1e-6);
        let (defect, positive) = two_point_check(&input, &out).unwrap();
        assert!(defect < 1e-12, "{defect}");
        assert!(positive);
    }

    #[test]
    fn two_point_rejects_bad_input() {
        assert!(TwoPointInput::new(2.0, 1.0, 1.0, 1.0).is_err());
        assert!(TwoPointInput::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(TwoPointInput::new(1.0, 2.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn worked_four_point() {
        let cfg = FourPointConfig::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        // 7w² − w − 8 = 0
        let w = four_point_forward(&cfg, 1.0).unwrap();
        assert!((w - 8.0 / 7.0).abs() < 1e-15);
        assert!(cfg.relation(1.0, 8.0 / 7.0).abs() < 1e-13);
        let v = four_point_invert(&cfg, 8.0 / 7.0).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn four_point_limits() {
        let cfg = FourPointConfig::new(0.5, 3.0, 0.7, 1.3, 2.0).unwrap();
        assert!(four_point_forward(&cfg, 1e-9).unwrap() < 1e-6);
        assert!(four_point_forward(&cfg, 1e9).unwrap() > 1e9);
        let v = four_point_invert(&cfg, 1e-8).unwrap();
        assert!(v > 0.0 && v < 1e-6);
        assert!(four_point_forward(&cfg, 0.0).is_err());
        assert!(matches!(four_point_invert(&cfg, 1e30), Err(Error::OutOfRange { .. })));
    }
}
