//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibretool_core::cxhyp::{
    embed_boundary_point, embed_fuchsian, embed_point, kahler_segment_integral, toledo_invariant, triangle_area31,
    GramTriple, HermVector,
};
use fibretool_core::fibration::{f_params, fibration, pushforward};
use fibretool_core::fibre::{
    fibre_point, fibre_point_with, four_point_forward, four_point_invert, reconstruct, two_point_check,
    two_point_solve, FibreOptions, FourPointConfig, TwoPointInput,
};
use fibretool_core::geom2::{BoundaryPoint, InteriorPoint, Point, ProjMatrix};
use fibretool_core::groups::{g_from_r, Representation};
use fibretool_core::invariants::{rep_area, triangle_area_gb};
use fibretool_core::seedgen::{deformed_rep, symmetric_hyperelliptic, SeedSpec};

// criterion 1
const SEED_RESIDUAL: f64 = 1e-9;
const SEED_AREA_H: f64 = 1e-6;
const SEED_AREA_G: f64 = 1e-4;
// criterion 2
const FIXED_POINT: f64 = 1e-8;
// criterion 3
const ROUND_TRIP: f64 = 1e-6;
const INJECTIVE_GAP: f64 = 1e-4;
// criterion 4
const ALTERNATING: f64 = 1e-8;
// criterion 5
const TWO_POINT: f64 = 1e-9;
const WORKED: f64 = 1e-12;
// criterion 6
const FOUR_POINT_RESIDUAL: f64 = 1e-10;
const FOUR_POINT_INVERSE: f64 = 1e-9;
// criterion 7
const CHART_BASE: f64 = 1e-5;
const PROVISIONAL: f64 = 1e-6;
const DISTINCT: f64 = 1e-6;
// criterion 8
const GUARD: f64 = -1e-10;
const AREA_BOUND: f64 = PI / 2.0 + 1e-12;
const SEGMENT_SUM: f64 = 1e-9;
// criterion 9
const TOLEDO: f64 = 1e-5;
// criterion 10
const COCYCLE_AREA: f64 = 1e-6;
const COCYCLE_TRIANGLE: f64 = 1e-9;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(r: &mut ChaCha8Rng) -> InteriorPoint {
    InteriorPoint::new(r.gen_range(-3.0..3.0), r.gen_range(-2.0f64..2.0).exp()).unwrap()
}

fn random_sl2(r: &mut ChaCha8Rng) -> ProjMatrix {
    loop {
        let (a, b, c) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let a: f64 = a;
        if a.abs() > 0.2 {
            return ProjMatrix::new(a, b, c, (1.0 + b * c) / a).unwrap();
        }
    }
}

fn random_ball_vector(r: &mut ChaCha8Rng) -> HermVector {
    loop {
        let z1 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let z2 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        if z1.norm_sqr() + z2.norm_sqr() < 0.98 {
            return HermVector::new(z1, z2, Complex64::new(1.0, 0.0));
        }
    }
}

fn seed_areas() -> Outcome {
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for n in [6, 8, 10] {
        let h = symmetric_hyperelliptic(n).unwrap();
        let g = g_from_r(&h).unwrap();
        let nf = (n - 4) as f64;
        worst.0 = worst.0.max(h.relation_residual());
        worst.1 = worst.1.max((rep_area(&h, &InteriorPoint::I).unwrap() - nf * PI).abs());
        worst.2 = worst.2.max((rep_area(&g, &InteriorPoint::I).unwrap() - 2.0 * nf * PI).abs());
    }
    outcome(
        worst.0 < SEED_RESIDUAL && worst.1 < SEED_AREA_H && worst.2 < SEED_AREA_G,
        format!("residual {:.1e}, H area err {:.1e}, G area err {:.1e}", worst.0, worst.1, worst.2),
    )
}

fn hyperelliptic_fixed_points() -> Outcome {
    let mut worst = 0.0f64;
    for n in [6, 8, 10] {
        let h = symmetric_hyperelliptic(n).unwrap();
        let g = g_from_r(&h).unwrap();
        for which in [1, 2] {
            worst = worst.max(pushforward(&g, which).unwrap().max_distance(&h));
        }
    }
    outcome(worst < FIXED_POINT, format!("max deviation {worst:.1e}"))
}

fn round_trip() -> Outcome {
    let mut worst = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for (n, count) in [(8usize, 20u64), (10, 5)] {
        let mut pairs: Vec<(Representation, Representation)> = Vec::new();
        for seed in 0..count {
            let rho = deformed_rep(&SeedSpec::new(n, seed, 1.0).unwrap()).unwrap();
            let fib = fibration(&rho).unwrap();
            let back = reconstruct(&fib.rep1, &fib.rep2).unwrap();
            worst = worst.max(back.max_distance(&rho));
            pairs.push((fib.rep1, fib.rep2));
        }
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let gap = pairs[i].0.max_distance(&pairs[j].0).max(pairs[i].1.max_distance(&pairs[j].1));
                min_gap = min_gap.min(gap);
            }
        }
    }
    outcome(
        worst < ROUND_TRIP && min_gap > INJECTIVE_GAP,
        format!("max deviation {worst:.1e}, smallest pair separation {min_gap:.1e}"),
    )
}

fn alternating_relation() -> Outcome {
    let mut reps = Vec::new();
    for n in [6, 8, 10] {
        reps.push(g_from_r(&symmetric_hyperelliptic(n).unwrap()).unwrap());
        for seed in 0..5 {
            reps.push(deformed_rep(&SeedSpec::new(n, seed, 1.0).unwrap()).unwrap());
        }
    }
    let worst =
        reps.iter().map(|r| f_params(&fibration(r).unwrap()).unwrap().alternating_sum().abs()).fold(0.0, f64::max);
    outcome(worst < ALTERNATING, format!("{} reps, max |sum| {worst:.1e}", reps.len()))
}

fn two_point_step() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    let mut all_positive = true;
    for _ in 0..1000 {
        let b3 = r.gen_range(0.1..5.0);
        let e3 = b3 * (1.0 + r.gen_range(0.05..5.0));
        let input = TwoPointInput::new(b3, e3, r.gen_range(0.2..5.0), r.gen_range(0.2..5.0)).unwrap();
        match two_point_solve(&input).and_then(|out| two_point_check(&input, &out)) {
            Ok((defect, positive)) => {
                worst = worst.max(defect);
                all_positive &= positive;
            }
            Err(e) => return outcome(false, format!("{input:?}: {e}")),
        }
    }
    let u = two_point_solve(&TwoPointInput::new(1.0, 2.0, 1.0, 1.0).unwrap()).unwrap().u;
    let worked = (u - (5f64.sqrt() - 1.0) / 4.0).abs();
    outcome(
        worst < TWO_POINT && all_positive && worked < WORKED,
        format!("max endpoint defect {worst:.1e}, cycles positive {all_positive}, worked instance err {worked:.1e}"),
    )
}

fn four_point_step() -> Outcome {
    let mut r = rng(6);
    let (mut residual, mut inverse) = (0.0f64, 0.0f64);
    let mut monotone = true;
    for _ in 0..50 {
        let b = r.gen_range(0.1..5.0);
        let e = b * (1.0 + r.gen_range(0.05..5.0));
        let cfg =
            FourPointConfig::new(b, e, r.gen_range(0.2..5.0), r.gen_range(0.2..5.0), r.gen_range(0.2..5.0)).unwrap();
        let mut prev = 0.0;
        for k in 0..100 {
            let v = 10f64.powf(-3.0 + 6.0 * k as f64 / 99.0);
            let w = four_point_forward(&cfg, v).unwrap();
            monotone &= w > prev && w > v;
            prev = w;
            residual = residual.max(cfg.relation(v, w).abs() / cfg.relation_scale(v, w));
            inverse = inverse.max((four_point_invert(&cfg, w).unwrap() - v).abs() / v);
        }
    }
    let w = four_point_forward(&FourPointConfig::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap(), 1.0).unwrap();
    let worked = (w - 8.0 / 7.0).abs();
    outcome(
        monotone && residual < FOUR_POINT_RESIDUAL && inverse < FOUR_POINT_INVERSE && worked < WORKED,
        format!(
            "increasing and above diagonal {monotone}, relative residual {residual:.1e}, inverse err {inverse:.1e}, worked instance err {worked:.1e}"
        ),
    )
}

fn fibre_chart() -> Outcome {
    let base = symmetric_hyperelliptic(8).unwrap();
    let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut points = Vec::new();
    let (mut to_base, mut provisional) = (0.0f64, 0.0f64);
    for &x in &grid {
        for &y in &grid {
            let lambda = [x, y];
            let rho = fibre_point(&base, &lambda).unwrap();
            to_base = to_base.max(pushforward(&rho, 1).unwrap().max_distance(&base));
            for v in [0.2, 5.0] {
                let other = fibre_point_with(&base, &lambda, &FibreOptions { provisional_v: v }).unwrap();
                provisional = provisional.max(other.max_distance(&rho));
            }
            points.push(rho);
        }
    }
    let mut min_sep = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            min_sep = min_sep.min(points[i].max_distance(&points[j]));
        }
    }
    outcome(
        to_base < CHART_BASE && provisional < PROVISIONAL && min_sep > DISTINCT,
        format!(
            "25 points, min separation {min_sep:.1e}, pushforward to base {to_base:.1e}, provisional-p4 spread {provisional:.1e}"
        ),
    )
}

fn complex_area() -> Outcome {
    let mut r = rng(8);
    let (mut min_re, mut max_area) = (f64::INFINITY, 0.0f64);
    for _ in 0..10_000 {
        let p = [random_ball_vector(&mut r), random_ball_vector(&mut r), random_ball_vector(&mut r)];
        let x = GramTriple::new([&p[0], &p[1], &p[2]]).triple();
        min_re = min_re.min(x.re / x.norm());
        max_area = max_area.max(triangle_area31(&p[0], &p[1], &p[2]).unwrap().abs());
    }
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let worked = triangle_area31(
        &HermVector::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
        &HermVector::new(c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
        &HermVector::new(c(0.0, 0.5), c(0.0, 0.0), c(1.0, 0.0)),
    )
    .unwrap();
    let worked_err = (worked - 0.5 * 0.25f64.atan()).abs();
    let mut segment = 0.0f64;
    for _ in 0..100 {
        let [u, a, b, d] = [0; 4].map(|_| random_ball_vector(&mut r));
        let s = kahler_segment_integral(&u, &a, &b).unwrap()
            + kahler_segment_integral(&u, &b, &d).unwrap()
            + kahler_segment_integral(&u, &d, &a).unwrap();
        segment = segment.max((s + triangle_area31(&a, &b, &d).unwrap()).abs());
    }
    outcome(
        min_re >= GUARD && max_area <= AREA_BOUND && worked_err < WORKED && segment < SEGMENT_SUM,
        format!(
            "min relative Re {min_re:.3}, max |area| {max_area:.6}, worked err {worked_err:.1e}, segment sum err {segment:.1e}"
        ),
    )
}

fn toledo_value() -> Outcome {
    // independent oracle for the normalization: one ideal triangle measured in both models
    let ideal = [BoundaryPoint::Infinity, BoundaryPoint::Finite(0.0), BoundaryPoint::Finite(1.0)];
    let lifted = ideal.map(|p| embed_boundary_point(&p));
    let oracle = triangle_area31(&lifted[0], &lifted[1], &lifted[2]).unwrap()
        / triangle_area_gb(&Point::from(ideal[0]), &Point::from(ideal[1]), &Point::from(ideal[2]));
    let x0 = embed_point(&InteriorPoint::I);
    let (mut value_err, mut ratio_err) = (0.0f64, 0.0f64);
    let mut ratios = Vec::new();
    for n in [6, 8] {
        let g = g_from_r(&symmetric_hyperelliptic(n).unwrap()).unwrap();
        let t = toledo_invariant(&embed_fuchsian(&g).unwrap(), &x0).unwrap();
        let ratio = t / rep_area(&g, &InteriorPoint::I).unwrap();
        value_err = value_err.max((t - (n - 4) as f64 * PI / 2.0).abs());
        ratio_err = ratio_err.max((ratio - oracle).abs());
        ratios.push(ratio);
    }
    outcome(
        value_err < TOLEDO && ratio_err < TOLEDO,
        format!("value err {value_err:.1e}, ratios {:.6} {:.6}, oracle ratio {oracle:.6}", ratios[0], ratios[1]),
    )
}

fn cocycle() -> Outcome {
    let mut r = rng(10);
    let rho = deformed_rep(&SeedSpec::new(8, 3, 1.0).unwrap()).unwrap();
    let reference = rep_area(&rho, &InteriorPoint::I).unwrap();
    let mut basepoint = 0.0f64;
    for _ in 0..10 {
        let x = random_point(&mut r);
        basepoint = basepoint.max((rep_area(&rho, &x).unwrap() - reference).abs());
    }
    let mut conjugation = 0.0f64;
    for _ in 0..5 {
        let m = random_sl2(&mut r);
        conjugation = conjugation.max((rep_area(&rho.conjugated(&m), &InteriorPoint::I).unwrap() - reference).abs());
    }
    let (mut alternation, mut coboundary) = (0.0f64, 0.0f64);
    let a = |p: &InteriorPoint, q: &InteriorPoint, s: &InteriorPoint| {
        triangle_area_gb(&Point::from(*p), &Point::from(*q), &Point::from(*s))
    };
    for _ in 0..1000 {
        let [p1, p2, p3, p4] = [0; 4].map(|_| random_point(&mut r));
        let base = a(&p1, &p2, &p3);
        alternation = alternation
            .max((base + a(&p2, &p1, &p3)).abs())
            .max((base + a(&p1, &p3, &p2)).abs())
            .max((base - a(&p2, &p3, &p1)).abs());
        coboundary = coboundary.max((a(&p2, &p3, &p4) - a(&p1, &p3, &p4) + a(&p1, &p2, &p4) - a(&p1, &p2, &p3)).abs());
    }
    outcome(
        basepoint < COCYCLE_AREA
            && conjugation < COCYCLE_AREA
            && alternation < COCYCLE_TRIANGLE
            && coboundary < COCYCLE_TRIANGLE,
        format!(
            "basepoint {basepoint:.1e}, conjugation {conjugation:.1e}, alternation {alternation:.1e}, coboundary {coboundary:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("seed areas", seed_areas, Some(5)),
        ("hyperelliptic fixed points", hyperelliptic_fixed_points, Some(1)),
        ("round-trip embedding", round_trip, Some(30)),
        ("alternating relation", alternating_relation, None),
        ("two-point closing step", two_point_step, Some(2)),
        ("four-point closing step", four_point_step, Some(5)),
        ("fibre chart", fibre_chart, Some(20)),
        ("complex hyperbolic area", complex_area, Some(3)),
        ("area of embedded maximal reps", toledo_value, Some(5)),
        ("cocycle sanity", cocycle, Some(2)),
    ];
    let mut failures = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let ok = out.ok && in_time;
        failures += usize::from(!ok);
        let budget = budget.map(|s| format!(" (limit {s} s)")).unwrap_or_default();
        println!(
            "{} criterion {}: {name}: {} [{:.2} s{budget}]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
