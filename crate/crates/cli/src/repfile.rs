//! On-disk format for representations.
//!
//! ```json
//! {
//!   "format": "fibretool-rep",
//!   "version": 1,
//!   "kind": "G",
//!   "n": 6,
//!   "generators": [[a, b, c, d], ...],
//!   "meta": { "seed": 3, "magnitude": 1.0, "provenance": ["gen --n 6"] }
//! }
//! ```
//!
//! 2x2 generators are rows `[a, b, c, d]`. Files holding 3x3 complex
//! matrices use the format name `fibretool-rep3` and rows of 18 reals
//! (row-major, real and imaginary part interleaved).

use std::fs;
use std::path::Path;

use fibretool_core::cxhyp::CMat3;
use fibretool_core::geom2::ProjMatrix;
use fibretool_core::groups::{Kind, Presentation, Representation};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::Failure;

pub const FORMAT: &str = "fibretool-rep";
pub const FORMAT3: &str = "fibretool-rep3";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
}

impl Meta {
    fn is_empty(&self) -> bool {
        *self == Meta::default()
    }

    /// Copy with one more provenance step.
    pub fn then(&self, step: impl Into<String>) -> Meta {
        let mut m = self.clone();
        m.provenance.push(step.into());
        m
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: String,
    version: u32,
    kind: String,
    n: usize,
    generators: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Meta::is_empty")]
    meta: Meta,
}

pub struct RepFile {
    pub rep: Representation,
    pub meta: Meta,
}

pub struct RepFile3 {
    pub rep: Representation<CMat3>,
    pub meta: Meta,
}

fn invalid(path: &Path, msg: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {msg}", path.display()))
}

fn read_raw(path: &Path, format: &str) -> Result<(RawFile, Presentation), Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(path, e))?;
    let raw: RawFile = serde_json::from_str(&text)
        .map_err(|e| invalid(path, format!("line {} column {}: {e}", e.line(), e.column())))?;
    if raw.format != format {
        return Err(invalid(path, format!("format is \"{}\", expected \"{format}\"", raw.format)));
    }
    if raw.version != VERSION {
        return Err(invalid(
            path,
            format!("unsupported format version {} (this build reads version {VERSION})", raw.version),
        ));
    }
    let kind = match raw.kind.as_str() {
        "H" => Kind::H,
        "G" => Kind::G,
        other => return Err(invalid(path, format!("kind: expected \"H\" or \"G\", got \"{other}\""))),
    };
    let p = Presentation::new(kind, raw.n).map_err(|e| invalid(path, format!("n: {e}")))?;
    if raw.generators.len() != p.generator_count() {
        return Err(invalid(
            path,
            format!("generators: {p} needs {} matrices, found {}", p.generator_count(), raw.generators.len()),
        ));
    }
    Ok((raw, p))
}

fn check_row_len(path: &Path, i: usize, row: &[f64], want: usize) -> Result<(), Failure> {
    if row.len() != want {
        return Err(invalid(path, format!("generators[{i}]: expected {want} numbers, found {}", row.len())));
    }
    Ok(())
}

/// Loads a 2x2 representation. Only the matrices are validated; relations
/// are left to the caller.
pub fn load(path: &Path) -> Result<RepFile, Failure> {
    let (raw, p) = read_raw(path, FORMAT)?;
    let mut images = Vec::with_capacity(raw.generators.len());
    for (i, row) in raw.generators.iter().enumerate() {
        check_row_len(path, i, row, 4)?;
        let m = ProjMatrix::new(row[0], row[1], row[2], row[3])
            .map_err(|e| invalid(path, format!("generators[{i}]: {e}")))?;
        images.push(m);
    }
    let rep = Representation::from_parts(p, images).map_err(|e| invalid(path, e))?;
    Ok(RepFile { rep, meta: raw.meta })
}

fn write(path: &Path, raw: &RawFile) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(raw).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| invalid(path, e))
}

/// Saves with every matrix sign-canonicalized.
pub fn save(path: &Path, rep: &Representation, meta: &Meta) -> Result<(), Failure> {
    let raw = RawFile {
        format: FORMAT.into(),
        version: VERSION,
        kind: rep.kind().to_string(),
        n: rep.n(),
        generators: rep.images().iter().map(|m| m.canonical().entries().to_vec()).collect(),
        meta: meta.clone(),
    };
    write(path, &raw)
}

pub fn load3(path: &Path) -> Result<RepFile3, Failure> {
    let (raw, p) = read_raw(path, FORMAT3)?;
    let mut images = Vec::with_capacity(raw.generators.len());
    for (i, row) in raw.generators.iter().enumerate() {
        check_row_len(path, i, row, 18)?;
        if row.iter().any(|x| !x.is_finite()) {
            return Err(invalid(path, format!("generators[{i}]: non-finite entry")));
        }
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (k, z) in m.iter_mut().flatten().enumerate() {
            *z = Complex64::new(row[2 * k], row[2 * k + 1]);
        }
        let m = CMat3(m);
        let defect = m.unitarity_defect();
        if defect > 1e-8 {
            return Err(invalid(path, format!("generators[{i}]: not unitary for the form (defect {defect:e})")));
        }
        images.push(m);
    }
    let rep = Representation::from_parts(p, images).map_err(|e| invalid(path, e))?;
    Ok(RepFile3 { rep, meta: raw.meta })
}

pub fn save3(path: &Path, rep: &Representation<CMat3>, meta: &Meta) -> Result<(), Failure> {
    let raw = RawFile {
        format: FORMAT3.into(),
        version: VERSION,
        kind: rep.kind().to_string(),
        n: rep.n(),
        generators: rep.images().iter().map(|m| m.0.iter().flatten().flat_map(|z| [z.re, z.im]).collect()).collect(),
        meta: meta.clone(),
    };
    write(path, &raw)
}
