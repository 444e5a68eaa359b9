//! Disc-model pictures of a representation.

use std::fmt::Write;

use fibretool_core::fibration::ts_decompose;
use fibretool_core::geom2::{axis, classify, BoundaryPoint, Geodesic, InteriorPoint, IsometryClass};
use fibretool_core::groups::{Kind, Representation};
use num_complex::Complex64;

const SIZE: f64 = 640.0;
const RADIUS: f64 = 300.0;

fn screen(w: Complex64) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * w.re, SIZE / 2.0 - RADIUS * w.im)
}

/// Path data of the geodesic between two points of the unit circle.
fn geodesic_path(g: &Geodesic) -> String {
    let (p, q) = (g.src.to_disc(), g.dst.to_disc());
    let (x0, y0) = screen(p);
    let (x1, y1) = screen(q);
    let cos = (p.conj() * q).re;
    if 1.0 + cos < 1e-9 || (p.conj() * q).im.abs() < 1e-9 {
        return format!("M {x0:.3} {y0:.3} L {x1:.3} {y1:.3}");
    }
    // the orthogonal circle is centred at (p + q)/(1 + cos Δ)
    let c = (p + q) / (1.0 + cos);
    let r = RADIUS * (c - p).norm();
    let (cx, cy) = screen(c);
    let cross = (x0 - cx) * (y1 - cy) - (y0 - cy) * (x1 - cx);
    let sweep = u8::from(cross > 0.0);
    format!("M {x0:.3} {y0:.3} A {r:.3} {r:.3} 0 0 {sweep} {x1:.3} {y1:.3}")
}

fn dot(out: &mut String, w: Complex64, r: f64, class: &str) {
    let (x, y) = screen(w);
    let _ = writeln!(out, r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}"/>"#);
}

fn interior_dot(out: &mut String, p: &InteriorPoint, class: &str) {
    dot(out, p.to_disc(), 3.5, class);
}

fn boundary_dot(out: &mut String, p: &BoundaryPoint) {
    dot(out, p.to_disc(), 2.5, "fixed");
}

/// Axes of the generators, their boundary fixed points, the half-turn
/// centres of the `t`/`s` splitting (surface groups) or of the generators
/// (orbifold groups), and the reference geodesic drawn on top.
pub fn render(rep: &Representation) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">
  <title>{} representation in the disc model</title>
  <style>
    .absolute {{ fill: none; stroke: #222; stroke-width: 1.5 }}
    .axis {{ fill: none; stroke: #888; stroke-width: 1 }}
    .reference {{ fill: none; stroke: #c0392b; stroke-width: 2.5 }}
    .fixed {{ fill: #444 }}
    .centre {{ fill: #2e86c1 }}
    .t {{ fill: #2e86c1 }}
    .s {{ fill: #e67e22 }}
  </style>
  <circle class="absolute" cx="{c}" cy="{c}" r="{RADIUS}"/>"#,
        rep.presentation(),
        c = SIZE / 2.0
    );
    for m in rep.images() {
        match classify(m) {
            IsometryClass::Hyperbolic { repeller, attractor } => {
                if let Ok(g) = Geodesic::new(repeller, attractor) {
                    let _ = writeln!(out, r#"  <path class="axis" d="{}"/>"#, geodesic_path(&g));
                }
                boundary_dot(&mut out, &repeller);
                boundary_dot(&mut out, &attractor);
            }
            IsometryClass::Parabolic { fixed } => boundary_dot(&mut out, &fixed),
            IsometryClass::Elliptic { fixed } => interior_dot(&mut out, &fixed, "centre"),
            IsometryClass::Identity => {}
        }
    }
    let reference = match rep.kind() {
        Kind::G => match ts_decompose(rep) {
            Ok(ts) => {
                for i in 1..ts.n() {
                    interior_dot(&mut out, &ts.center(i), "t");
                }
                for i in 1..=ts.n() {
                    if let Ok(c) = fibretool_core::geom2::half_turn_center(&ts.s(i)) {
                        interior_dot(&mut out, &c, "s");
                    }
                }
                Some(ts.axis)
            }
            Err(_) => axis(&rep.at(1)).ok(),
        },
        Kind::H => axis(&(rep.at(rep.n()) * rep.at(1))).ok(),
    };
    if let Some(g) = reference {
        let _ = writeln!(out, r#"  <path class="reference" d="{}"/>"#, geodesic_path(&g));
    }
    out.push_str("</svg>\n");
    out
}
