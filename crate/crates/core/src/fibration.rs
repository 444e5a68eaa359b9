//! The forward construction: a maximal representation of `G_n` splits as
//! `g_i = t_i s_i` into half-turns, and regrouping the factors gives two
//! hyperelliptic representations `ρ₁` (the `a_i`) and `ρ₂` (the `c_i`).
//!
//! All indices are 1-based. `t_1 = t_{n−1}`, `s_n = t_{n−1}`,
//! `h_i = t_i t_{i−1}` for `2 ≤ i ≤ n−1`.

use crate::error::{Error, Result};
use crate::geom2::{
    axis, half_turn_center, intersect_geodesics, normalize_to, product, reflection, split_at_axis_point,
    translation_along, v_coordinate, Geodesic, InteriorPoint, ProjMatrix,
};
use crate::groups::{Kind, Presentation, Representation};
use crate::tol;

/// Half-turn factors of the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct TsData {
    n: usize,
    /// Axis of `ρ(g_1)`.
    pub axis: Geodesic,
    t: Vec<ProjMatrix>,
    s: Vec<ProjMatrix>,
    /// Centres of `t_2..t_{n−1}`, all on the axis.
    centers: Vec<InteriorPoint>,
}

impl TsData {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `t_i` for `1 ≤ i ≤ n−1`.
    pub fn t(&self, i: usize) -> ProjMatrix {
        self.t[i - 1]
    }

    /// `s_i` for `1 ≤ i ≤ n`.
    pub fn s(&self, i: usize) -> ProjMatrix {
        self.s[i - 1]
    }

    /// Centre of `t_i` for `1 ≤ i ≤ n−1`.
    pub fn center(&self, i: usize) -> InteriorPoint {
        let i = if i == 1 { self.n - 1 } else { i };
        self.centers[i - 2]
    }
}

/// Splits every generator at its crossing with the axis of `g_1`.
pub fn ts_decompose(rep_g: &Representation) -> Result<TsData> {
    if rep_g.kind() != Kind::G {
        return Err(Error::InvalidInput("ts_decompose needs a G_n representation".into()));
    }
    let residual = rep_g.relation_residual();
    if !(residual < tol::INPUT_RESIDUAL) {
        return Err(Error::ResidualTooLarge { residual, limit: tol::INPUT_RESIDUAL });
    }
    split_generators(rep_g)
}

fn split_generators(rep_g: &Representation) -> Result<TsData> {
    let n = rep_g.n();
    let g1_axis = axis(&rep_g.at(1))?;
    let mut t = vec![ProjMatrix::IDENTITY; n - 1];
    let mut s = vec![ProjMatrix::IDENTITY; n];
    let mut centers = Vec::with_capacity(n - 2);
    for i in 2..n {
        let gi = rep_g.at(i);
        let ax = axis(&gi).map_err(|_| Error::NotHyperbolic { what: format!("g_{i} (trace {})", gi.trace()) })?;
        let c = intersect_geodesics(&g1_axis, &ax).ok().flatten().ok_or(Error::NotInMaximalComponent { index: i })?;
        let (ti, si) = split_at_axis_point(&gi, &c)?;
        t[i - 1] = ti;
        s[i - 1] = si;
        centers.push(c);
    }
    t[0] = t[n - 2];
    s[0] = t[0].inverse() * rep_g.at(1);
    s[n - 1] = t[n - 2];
    Ok(TsData { n, axis: g1_axis, t, s, centers })
}

/// Translations `h_i`, `u_i`, `v_i` along the axis.
#[derive(Clone, Debug, PartialEq)]
pub struct UvTables {
    n: usize,
    h: Vec<ProjMatrix>,
    u: Vec<ProjMatrix>,
    v: Vec<ProjMatrix>,
}

impl UvTables {
    /// `h_i` for `2 ≤ i ≤ n−1`.
    pub fn h(&self, i: usize) -> ProjMatrix {
        self.h[i - 2]
    }

    /// `u_i` for `1 ≤ i ≤ n`.
    pub fn u(&self, i: usize) -> ProjMatrix {
        self.u[i - 1]
    }

    /// `v_i` for `1 ≤ i ≤ n`.
    pub fn v(&self, i: usize) -> ProjMatrix {
        self.v[i - 1]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `u_i = h_{n−2} h_{n−4} ⋯` and `v_i = h_{n−1} h_{n−3} ⋯`, each stopping at
/// the first index past `i` of the right parity.
pub fn uv_tables(ts: &TsData) -> UvTables {
    let n = ts.n;
    let h: Vec<ProjMatrix> = (2..n).map(|i| ts.t(i) * ts.t(i - 1)).collect();
    let hp = |j: usize| h[j - 2];
    let descending = |top: usize, low: usize| -> ProjMatrix {
        let factors: Vec<ProjMatrix> = (low..=top).rev().step_by(2).map(hp).collect();
        product(&factors)
    };
    let u = (1..=n)
        .map(|i| {
            let low = if i % 2 == 1 { i + 1 } else { i + 2 };
            if low > n - 2 {
                ProjMatrix::IDENTITY
            } else {
                descending(n - 2, low)
            }
        })
        .collect();
    let v = (1..=n)
        .map(|i| {
            let low = if i % 2 == 1 { i + 2 } else { i + 1 };
            if low > n - 1 {
                ProjMatrix::IDENTITY
            } else {
                descending(n - 1, low)
            }
        })
        .collect();
    UvTables { n, h, u, v }
}

/// Everything the forward construction produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Fibration {
    pub ts: TsData,
    pub uv: UvTables,
    /// `r_i ↦ a_i`.
    pub rep1: Representation,
    /// `r_i ↦ c_i`.
    pub rep2: Representation,
}

/// Runs the forward construction on a `G_n` representation.
pub fn fibration(rep_g: &Representation) -> Result<Fibration> {
    let ts = ts_decompose(rep_g)?;
    let uv = uv_tables(&ts);
    let n = ts.n;
    let mut a = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    a.push(uv.u(1) * ts.s(1));
    c.push(uv.v(1) * ts.s(1));
    for i in 2..=n {
        a.push(uv.u(i).conj(&ts.s(i)));
        c.push(uv.v(i).conj(&ts.s(i)));
    }
    let p = Presentation::h(n)?;
    let rep1 = Representation::new(p, a)?;
    let rep2 = Representation::new(p, c)?;
    Ok(Fibration { ts, uv, rep1, rep2 })
}

/// `ρ₁` (`which = 1`) or `ρ₂` (`which = 2`).
pub fn pushforward(rep_g: &Representation, which: u8) -> Result<Representation> {
    let f = fibration(rep_g)?;
    match which {
        1 => Ok(f.rep1),
        2 => Ok(f.rep2),
        _ => Err(Error::Domain(format!("which must be 1 or 2, got {which}"))),
    }
}

/// Translation lengths `φ_1..φ_{n−2}` of the conjugators `f_i` with
/// `c_i = f_i a_i f_i⁻¹`, measured along the axis of `g_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FibreCoordinates {
    pub phi: Vec<f64>,
}

impl FibreCoordinates {
    /// `Σ (−1)^i φ_i = −φ_1 + φ_2 − ⋯ + φ_{n−2}`; vanishes on every fibre pair.
    pub fn alternating_sum(&self) -> f64 {
        self.phi.iter().enumerate().map(|(k, p)| if k % 2 == 0 { -p } else { *p }).sum()
    }
}

/// `f_1 = v_1` and `f_i = v_i u_i⁻¹`, in translation-length coordinates.
pub fn f_params(fib: &Fibration) -> Result<FibreCoordinates> {
    let n = fib.ts.n;
    let norm = normalize_to(&fib.ts.axis);
    let mut phi = Vec::with_capacity(n - 2);
    for i in 1..=n - 2 {
        let f = if i == 1 { fib.uv.v(1) } else { fib.uv.v(i) * fib.uv.u(i).inverse() };
        let p = v_coordinate(&norm.conj(&f))
            .map_err(|_| Error::Consistency(format!("f_{i} is not a translation along the axis of g_1")))?;
        let (a, c) = (fib.rep1.at(i), fib.rep2.at(i));
        let err = f.conj(&a).dist(&c);
        if err > tol::COMPARE * c.norm().max(1.0) {
            return Err(Error::Consistency(format!("c_{i} differs from f_{i} a_{i} f_{i}^-1 by {err:e}")));
        }
        phi.push(p);
    }
    Ok(FibreCoordinates { phi })
}

/// `N⁻¹·diag(e^{φ/2}, e^{−φ/2})·N` for `N` normalizing `g`.
pub fn translation_on(g: &Geodesic, phi: f64) -> ProjMatrix {
    let n = normalize_to(g);
    n.inverse() * translation_along(phi) * n
}

/// Centres of `t_i` and `s_i`, for plotting.
pub fn half_turn_centers(ts: &TsData) -> Result<(Vec<InteriorPoint>, Vec<InteriorPoint>)> {
    let t = (1..ts.n).map(|i| half_turn_center(&ts.t(i))).collect::<Result<Vec<_>>>()?;
    let s = (1..=ts.n).map(|i| half_turn_center(&ts.s(i))).collect::<Result<Vec<_>>>()?;
    Ok((t, s))
}

/// The half-turn about the crossing of the axes of `g_1` and `g_{n−1}`.
pub fn base_involution(ts: &TsData) -> ProjMatrix {
    reflection(&ts.center(ts.n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::g_from_r;
    use crate::seedgen::symmetric_hyperelliptic;

    #[test]
    fn hyperelliptic_input_is_fixed() {
        for n in [6, 8, 10] {
            let h = symmetric_hyperelliptic(n).unwrap();
            let g = g_from_r(&h).unwrap();
            let fib = fibration(&g).unwrap();
            assert!(fib.rep1.max_distance(&h) < 1e-9);
            assert!(fib.rep2.max_distance(&h) < 1e-9);
            for i in 2..n {
                assert!(fib.uv.h(i).dist_to_identity() < 1e-9);
            }
            for i in 1..=n {
                assert!(fib.uv.u(i).dist_to_identity() < 1e-9 && fib.uv.v(i).dist_to_identity() < 1e-9);
            }
            let fc = f_params(&fib).unwrap();
            assert!(fc.phi.iter().all(|p| p.abs() < 1e-9));
        }
    }

    #[test]
    fn tables_have_fixed_tail() {
        let g = g_from_r(&symmetric_hyperelliptic(8).unwrap()).unwrap();
        let fib = fibration(&g).unwrap();
        let n = 8;
        for i in [n - 2, n - 1, n] {
            assert_eq!(fib.uv.u(i), ProjMatrix::IDENTITY);
        }
        for i in [n - 1, n] {
            assert_eq!(fib.uv.v(i), ProjMatrix::IDENTITY);
        }
        assert_eq!(fib.ts.s(n), fib.ts.t(n - 1));
        assert_eq!(fib.ts.t(1), fib.ts.t(n - 1));
        for i in 1..n {
            assert!((fib.ts.t(i) * fib.ts.s(i)).approx_eq(&g.at(i), 1e-12));
        }
    }

    #[test]
    fn alternating_sum_sign_pattern() {
        let fc = FibreCoordinates { phi: vec![1.0, 2.0, 3.0, 4.0] };
        assert_eq!(fc.alternating_sum(), -1.0 + 2.0 - 3.0 + 4.0);
    }

    #[test]
    fn crossing_is_required() {
        let g = g_from_r(&symmetric_hyperelliptic(6).unwrap()).unwrap();
        let mut images = g.images().to_vec();
        // push the axis of g_2 far to the right of the axis of g_1
        let far = ProjMatrix::raw(1.0, 50.0, 0.0, 1.0);
        images[1] = far.conj(&images[1]);
        let rep = Representation::from_parts(g.presentation(), images).unwrap();
        assert!(matches!(split_generators(&rep), Err(Error::NotInMaximalComponent { index: 2 })));
        assert!(matches!(ts_decompose(&rep), Err(Error::ResidualTooLarge { .. })));
    }
}
