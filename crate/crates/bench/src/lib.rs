//! Shared inputs for the benchmarks.

use fibretool_core::groups::Representation;
use fibretool_core::seedgen::{deformed_rep, symmetric_hyperelliptic, SeedSpec};

pub fn base(n: usize) -> Representation {
    symmetric_hyperelliptic(n).expect("regular seed exists for even n >= 6")
}

pub fn deformed(n: usize, seed: u64) -> Representation {
    deformed_rep(&SeedSpec::new(n, seed, 1.0).expect("valid spec")).expect("deformation succeeds")
}
