//! Seeded round-trip sweeps over the fibre of a base representation.

use std::f64::consts::PI;
use std::thread;

use fibretool_core::fibration::fibration;
use fibretool_core::fibre::{fibre_point, reconstruct};
use fibretool_core::geom2::InteriorPoint;
use fibretool_core::groups::Representation;
use fibretool_core::invariants::rep_area;
use fibretool_core::seedgen::{draw_lambda, SeedSpec};

use crate::Failure;

pub const THREADS_VAR: &str = "FIBRETOOL_THREADS";

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub seed: u64,
    /// Round-trip deviation and area error, or the failure message.
    pub result: Result<(f64, f64), String>,
}

/// Worker count from `FIBRETOOL_THREADS`, else the available parallelism.
pub fn thread_count() -> Result<usize, Failure> {
    match std::env::var(THREADS_VAR) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got \"{s}\""))),
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |k| k.get())),
    }
}

fn run_one(base: &Representation, spec: &SeedSpec) -> Result<(f64, f64), String> {
    let lambda = draw_lambda(spec);
    let rho = fibre_point(base, &lambda).map_err(|e| e.to_string())?;
    let fib = fibration(&rho).map_err(|e| e.to_string())?;
    let back = reconstruct(&fib.rep1, &fib.rep2).map_err(|e| e.to_string())?;
    let area = rep_area(&rho, &InteriorPoint::I).map_err(|e| e.to_string())?;
    Ok((back.max_distance(&rho), (area - 2.0 * (spec.n - 4) as f64 * PI).abs()))
}

/// Runs seeds `first..first + count` on up to `threads` workers. Rows come
/// back in seed order whatever the scheduling.
pub fn sweep(
    base: &Representation,
    first: u64,
    count: usize,
    magnitude: f64,
    threads: usize,
) -> Result<Vec<SweepRow>, Failure> {
    let n = base.n();
    let specs = (0..count as u64)
        .map(|k| SeedSpec::new(n, first + k, magnitude).map_err(|e| Failure::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let workers = threads.clamp(1, count.max(1));
    let mut rows: Vec<Option<SweepRow>> = vec![None; count];
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let specs = &specs;
                scope.spawn(move || {
                    specs
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(k, spec)| (k, SweepRow { seed: spec.seed, result: run_one(base, spec) }))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (k, row) in h.join().expect("sweep worker panicked") {
                rows[k] = Some(row);
            }
        }
    });
    Ok(rows.into_iter().map(|r| r.expect("every seed is assigned")).collect())
}
