use crate::error::{Error, Result};
use crate::geom2::{
    axis, half_turn_center, normalize_to, product, signed_offset, translation_along, Geodesic, ProjMatrix,
};
use crate::groups::{Kind, Presentation, Representation};
use crate::tol;

/// Translation length `φ` with `c = f a f⁻¹` for the translation `f` by `φ`
/// along `g`. The centres of the half-turns `a` and `c` must be at the same
/// signed distance from `g`.
pub fn solve_conj_translation(a: &ProjMatrix, c: &ProjMatrix, g: &Geodesic) -> Result<f64> {
    let ca = half_turn_center(a)?;
    let cc = half_turn_center(c)?;
    let (offset_a, offset_c) = (signed_offset(&ca, g), signed_offset(&cc, g));
    if (offset_a - offset_c).abs() >= tol::SAME_EQUIDISTANT {
        return Err(Error::NotSameEquidistant { offset_a, offset_c });
    }
    let n = normalize_to(g);
    let (za, zc) = (n.apply_interior(&ca), n.apply_interior(&cc));
    Ok((zc.to_complex().norm() / za.to_complex().norm()).ln())
}

fn check_h(rep: &Representation, which: &str) -> Result<()> {
    if rep.kind() != Kind::H {
        return Err(Error::InvalidInput(format!("{which} must be an H_n representation")));
    }
    let residual = rep.relation_residual();
    if !(residual < tol::INPUT_RESIDUAL) {
        return Err(Error::ResidualTooLarge { residual, limit: tol::INPUT_RESIDUAL });
    }
    Ok(())
}

/// Axis of `a_n a_1`, along which both representations are compared.
pub(crate) fn comparison_axis(rep1: &Representation) -> Result<Geodesic> {
    let n = rep1.n();
    axis(&(rep1.at(n) * rep1.at(1)))
}

/// Translation lengths of the conjugators `f_1..f_{n−2}` between two
/// hyperelliptic representations sharing `r_n`.
pub fn conjugator_lengths(rep1: &Representation, rep2: &Representation) -> Result<Vec<f64>> {
    let n = rep1.n();
    let g = comparison_axis(rep1)?;
    (1..=n - 2).map(|i| solve_conj_translation(&rep1.at(i), &rep2.at(i), &g)).collect()
}

/// Rebuilds the representation of `G_n` whose two hyperelliptic images are
/// `rep1` (the `a_i`) and `rep2` (the `c_i`).
pub fn reconstruct(rep1: &Representation, rep2: &Representation) -> Result<Representation> {
    check_h(rep1, "rep1")?;
    let n = rep1.n();
    if rep2.kind() != Kind::H || rep2.n() != n {
        return Err(Error::InvalidInput(format!("rep2 must be a representation of H_{n}")));
    }
    let distance = rep1.at(n).dist(&rep2.at(n));
    if distance >= tol::COMPARE {
        return Err(Error::MismatchedBase { index: n, distance });
    }
    let g = comparison_axis(rep1)?;
    let phi: Vec<f64> =
        (1..=n - 2).map(|i| solve_conj_translation(&rep1.at(i), &rep2.at(i), &g)).collect::<Result<_>>()?;
    let sum: f64 = phi.iter().enumerate().map(|(k, p)| if k % 2 == 0 { -p } else { *p }).sum();
    if sum.abs() >= tol::FIBRE_PAIR {
        return Err(Error::NotAFibrePair { sum });
    }
    check_h(rep2, "rep2")?;
    let norm = normalize_to(&g);
    let norm_inv = norm.inverse();
    let f = |i: usize| norm_inv * translation_along(phi[i - 1]) * norm;

    // t[i] for 1 ≤ i ≤ n−1, t_1 = t_{n−1} = a_n
    let mut t = vec![ProjMatrix::IDENTITY; n];
    t[n - 1] = rep1.at(n);
    t[n - 2] = t[n - 1].inverse() * f(n - 2);
    for i in (2..=n - 3).rev() {
        let left = product(&(i + 1..=n - 1).rev().map(|j| t[j]).collect::<Vec<_>>());
        let right = product(&(i + 1..=n - 2).map(|j| t[j]).collect::<Vec<_>>());
        t[i] = left.inverse() * f(i) * right.inverse();
    }
    t[1] = t[n - 1];

    // u_i = t_{n−2} ⋯ t_{i+1} (i even) or t_{n−2} ⋯ t_i (i odd)
    let u = |i: usize| {
        let low = if i % 2 == 0 { i + 1 } else { i };
        product(&(low..=n - 2).rev().map(|j| t[j]).collect::<Vec<_>>())
    };
    let mut s = vec![ProjMatrix::IDENTITY; n];
    s[1] = u(1).inverse() * rep1.at(1);
    for i in 2..=n - 3 {
        s[i] = u(i).inverse().conj(&rep1.at(i));
    }
    s[n - 2] = rep1.at(n - 2);
    s[n - 1] = rep1.at(n - 1);
    let images: Vec<ProjMatrix> = (1..n).map(|i| t[i] * s[i]).collect();
    let out = Representation::new(Presentation::g(n)?, images)?;
    let residual = out.relation_residual();
    if residual >= 1e-5 {
        return Err(Error::Consistency(format!("reconstructed relation residual {residual:e}")));
    }
    Ok(out)
}
