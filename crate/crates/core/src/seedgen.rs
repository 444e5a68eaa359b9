//! Maximal-area seeds: the regular hyperelliptic configuration and seeded
//! deformations along the fibre.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fibre;
use crate::geom2::{reflection, InteriorPoint, ProjMatrix};
use crate::groups::{g_from_r, Presentation, Representation};
use crate::roots;

/// Parameters of a seeded deformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedSpec {
    pub n: usize,
    pub seed: u64,
    pub magnitude: f64,
}

impl SeedSpec {
    pub fn new(n: usize, seed: u64, magnitude: f64) -> Result<Self> {
        Presentation::h(n)?;
        if !(magnitude >= 0.0) || !magnitude.is_finite() {
            return Err(Error::Domain(format!("magnitude {magnitude} must be finite and non-negative")));
        }
        Ok(Self { n, seed, magnitude })
    }
}

const SCAN_LO: f64 = 0.05;
const SCAN_HI: f64 = 6.0;
const SCAN_STEP: f64 = 0.05;

/// Point at hyperbolic distance `r` from `i` in direction `theta`
/// (counterclockwise in the disc picture).
fn polar(r: f64, theta: f64) -> Result<InteriorPoint> {
    InteriorPoint::from_disc(Complex64::from_polar((0.5 * r).tanh(), theta))
}

/// Rotation about `i` by `2π/n`.
fn rotation(n: usize) -> ProjMatrix {
    let (s, c) = (PI / n as f64).sin_cos();
    ProjMatrix::raw(c, s, -s, c)
}

/// `|tr(ω·R(q₁))| − 2cos(π/n)`: zero exactly when `(ω⁻¹R(q₁))ⁿ = ±1`
/// with the smallest rotation, which closes up the regular configuration.
fn defect(n: usize, r: f64) -> Result<f64> {
    let q1 = polar(r, 2.0 * PI / n as f64)?;
    Ok((rotation(n) * reflection(&q1)).trace().abs() - 2.0 * (PI / n as f64).cos())
}

/// Radius of the regular configuration, by scanning and refining.
pub fn seed_radius(n: usize) -> Result<f64> {
    Presentation::h(n)?;
    let steps = ((SCAN_HI - SCAN_LO) / SCAN_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| SCAN_LO + k as f64 * SCAN_STEP).collect();
    let values = grid.iter().map(|&r| defect(n, r)).collect::<Result<Vec<f64>>>()?;
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::RootFinding(format!("seed defect is not monotone on the scan grid for n = {n}")));
    }
    let k = values
        .windows(2)
        .position(|w| w[0] < 0.0 && w[1] >= 0.0)
        .ok_or_else(|| Error::RootFinding(format!("no sign change of the seed defect in [{SCAN_LO}, {SCAN_HI}]")))?;
    roots::illinois(|r| defect(n, r).unwrap_or(f64::NAN), grid[k], grid[k + 1], 1e-15)
}

/// The regular hyperelliptic representation of `H_n`: half-turns about `n`
/// points at equal angles around `i`, placed counterclockwise.
pub fn symmetric_hyperelliptic(n: usize) -> Result<Representation> {
    let r = seed_radius(n)?;
    let images = (1..=n)
        .map(|j| polar(r, 2.0 * PI * j as f64 / n as f64).map(|q| reflection(&q)))
        .collect::<Result<Vec<_>>>()?;
    let rep = Representation::new(Presentation::h(n)?, images)?;
    let residual = rep.relation_residual();
    if residual > 1e-9 {
        return Err(Error::Consistency(format!("seed relation residual {residual:e}")));
    }
    Ok(rep)
}

/// The `G_n` representation induced by the regular seed.
pub fn symmetric_surface_rep(n: usize) -> Result<Representation> {
    g_from_r(&symmetric_hyperelliptic(n)?)
}

/// Chart parameters drawn uniformly from `[−magnitude, magnitude]^{n−6}`
/// with ChaCha8 seeded by `spec.seed`.
pub fn draw_lambda(spec: &SeedSpec) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.n - 6)
        .map(|_| if spec.magnitude > 0.0 { rng.gen_range(-spec.magnitude..=spec.magnitude) } else { 0.0 })
        .collect()
}

/// A point of the fibre over the regular seed, at seeded chart parameters.
pub fn deformed_rep(spec: &SeedSpec) -> Result<Representation> {
    let base = symmetric_hyperelliptic(spec.n)?;
    fibre::fibre_point(&base, &draw_lambda(spec))
}
