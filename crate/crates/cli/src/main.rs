use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibretool_core::cxhyp::{embed_fuchsian, embed_point, toledo_invariant};
use fibretool_core::fibration::{fibration, pushforward};
use fibretool_core::fibre::{fibre_point, reconstruct};
use fibretool_core::geom2::{classify, InteriorPoint};
use fibretool_core::groups::{Kind, Representation};
use fibretool_core::invariants::rep_area;
use fibretool_core::seedgen::{deformed_rep, draw_lambda, symmetric_hyperelliptic, SeedSpec};

mod repfile;
mod svg;
mod sweep;

use repfile::Meta;

/// Area checks compare against the maximal value with this slack.
const AREA_TOLERANCE: f64 = 1e-4;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) | Failure::Input(_) => 2,
        }
    }
}

impl From<fibretool_core::Error> for Failure {
    fn from(e: fibretool_core::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "fibretool", version, about = "Maximal representations of hyperelliptic surface groups")]
struct Cli {
    /// Threshold for relation residuals and round-trip deviations.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "H")]
    H,
    #[value(name = "G")]
    G,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the regular seed or a seeded deformation of it.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value = "G")]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        magnitude: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Report relation residuals, area and generator types.
    Verify {
        file: PathBuf,
        /// Instead run K seeded round trips over the fibre of the file's base.
        #[arg(long, value_name = "K")]
        sweep: Option<usize>,
        /// First seed of the sweep.
        #[arg(long, default_value_t = 0, requires = "sweep")]
        seed: u64,
        #[arg(long, default_value_t = 1.0, requires = "sweep")]
        magnitude: f64,
    },
    /// Push a surface group representation forward to one of its two
    /// hyperelliptic images.
    Fiber {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rebuild a surface group representation from its two images.
    Recon {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Push forward both ways, reconstruct and compare.
    Roundtrip { file: PathBuf },
    /// Move to the point of the fibre with the given chart parameters.
    Deform {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Embed into the isometries of the complex hyperbolic plane.
    Embed {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Area of a representation into the complex hyperbolic isometries.
    Toledo { file: PathBuf },
    /// Draw the representation in the disc model.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn maximal_area(rep: &Representation) -> f64 {
    let base = (rep.n() - 4) as f64 * PI;
    match rep.kind() {
        Kind::H => base,
        Kind::G => 2.0 * base,
    }
}

fn require(rep: &Representation, kind: Kind, path: &Path) -> Result<(), Failure> {
    if rep.kind() != kind {
        return Err(Failure::Input(format!(
            "{}: expected a representation of {}_n, found {}",
            path.display(),
            kind,
            rep.presentation()
        )));
    }
    Ok(())
}

/// The hyperelliptic base of a file: the representation itself for `H_n`,
/// its first image for `G_n`.
fn base_of(rep: &Representation) -> Result<Representation, Failure> {
    Ok(match rep.kind() {
        Kind::H => rep.clone(),
        Kind::G => pushforward(rep, 1)?,
    })
}

fn wrote(path: &Path, rep: &Representation) {
    println!("wrote {} ({})", path.display(), rep.presentation());
}

fn gen(n: usize, kind: KindArg, seed: u64, magnitude: f64, output: &Path) -> Result<(), Failure> {
    let spec = SeedSpec::new(n, seed, magnitude).map_err(|e| Failure::Usage(e.to_string()))?;
    let (rep, meta) = match kind {
        KindArg::H => {
            if magnitude != 0.0 {
                return Err(Failure::Usage("--magnitude applies to --kind G only".into()));
            }
            (symmetric_hyperelliptic(n)?, Meta::default().then(format!("gen --n {n} --kind H")))
        }
        KindArg::G => {
            let lambda = draw_lambda(&spec);
            let meta = Meta {
                seed: Some(seed),
                magnitude: Some(magnitude),
                lambda: Some(lambda),
                provenance: vec![format!("gen --n {n} --kind G --seed {seed} --magnitude {magnitude}")],
            };
            (deformed_rep(&spec)?, meta)
        }
    };
    repfile::save(output, &rep, &meta)?;
    wrote(output, &rep);
    Ok(())
}

fn verify(path: &Path, tolerance: f64) -> Result<(), Failure> {
    let rep = repfile::load(path)?.rep;
    println!("{} with {} generators", rep.presentation(), rep.images().len());
    let mut failed = Vec::new();
    for (name, r) in rep.relation_residuals() {
        let ok = r < tolerance;
        println!("relation {name}: residual {r:.3e} {}", if ok { "ok" } else { "FAILED" });
        if !ok {
            failed.push(format!("relation {name}"));
        }
    }
    let letter = rep.kind().letter();
    for (i, m) in rep.images().iter().enumerate() {
        let class = classify(m);
        let expect = match rep.kind() {
            Kind::H => "elliptic",
            Kind::G => "hyperbolic",
        };
        let ok = class.name() == expect;
        println!("{letter}_{}: {} (trace {:.6}){}", i + 1, class.name(), m.trace(), if ok { "" } else { " FAILED" });
        if !ok {
            failed.push(format!("type of {letter}_{}", i + 1));
        }
    }
    match rep_area(&rep, &InteriorPoint::I) {
        Ok(area) => {
            let max = maximal_area(&rep);
            let ok = (area.abs() - max).abs() < AREA_TOLERANCE;
            println!("area {area:.6} (maximal {max:.6}) {}", if ok { "ok" } else { "FAILED" });
            if !ok {
                failed.push("area".into());
            }
        }
        Err(e) => {
            println!("area unavailable: {e}");
            failed.push("area".into());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn verify_sweep(path: &Path, count: usize, first: u64, magnitude: f64, tolerance: f64) -> Result<(), Failure> {
    let base = base_of(&repfile::load(path)?.rep)?;
    let threads = sweep::thread_count()?;
    let rows = sweep::sweep(&base, first, count, magnitude, threads)?;
    let mut bad = 0;
    for row in &rows {
        match &row.result {
            Ok((dev, area)) => {
                let ok = *dev < tolerance && *area < AREA_TOLERANCE;
                bad += usize::from(!ok);
                println!(
                    "seed {}: deviation {dev:.3e}, area error {area:.3e} {}",
                    row.seed,
                    if ok { "ok" } else { "FAILED" }
                );
            }
            Err(e) => {
                bad += 1;
                println!("seed {}: FAILED {e}", row.seed);
            }
        }
    }
    println!("{} of {count} seeds passed on {threads} threads", count - bad);
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{bad} seeds failed")))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = cli.tolerance;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    match cli.command {
        Command::Gen { n, kind, seed, magnitude, output } => gen(n, kind, seed, magnitude, &output),
        Command::Verify { file, sweep: None, .. } => verify(&file, tol),
        Command::Verify { file, sweep: Some(k), seed, magnitude } => verify_sweep(&file, k, seed, magnitude, tol),
        Command::Fiber { file, which, output } => {
            let f = repfile::load(&file)?;
            require(&f.rep, Kind::G, &file)?;
            let out = pushforward(&f.rep, which)?;
            repfile::save(&output, &out, &f.meta.then(format!("fiber --which {which}")))?;
            wrote(&output, &out);
            Ok(())
        }
        Command::Recon { first, second, output } => {
            let (a, b) = (repfile::load(&first)?, repfile::load(&second)?);
            require(&a.rep, Kind::H, &first)?;
            require(&b.rep, Kind::H, &second)?;
            let out = reconstruct(&a.rep, &b.rep)?;
            repfile::save(&output, &out, &Meta::default().then("recon"))?;
            wrote(&output, &out);
            Ok(())
        }
        Command::Roundtrip { file } => {
            let rep = repfile::load(&file)?.rep;
            require(&rep, Kind::G, &file)?;
            let fib = fibration(&rep)?;
            let back = reconstruct(&fib.rep1, &fib.rep2)?;
            let dev = back.max_distance(&rep);
            println!("max deviation {dev:.3e}");
            if dev < tol {
                Ok(())
            } else {
                Err(Failure::Check(format!("round trip deviates by {dev:.3e} (tolerance {tol:e})")))
            }
        }
        Command::Deform { file, lambda, output } => {
            let f = repfile::load(&file)?;
            let base = base_of(&f.rep)?;
            let want = base.n() - 6;
            if lambda.len() != want {
                return Err(Failure::Usage(format!(
                    "--lambda needs {want} values for n = {}, got {}",
                    base.n(),
                    lambda.len()
                )));
            }
            let out = fibre_point(&base, &lambda)?;
            let text: Vec<String> = lambda.iter().map(f64::to_string).collect();
            let mut meta = f.meta.then(format!("deform --lambda {}", text.join(",")));
            meta.lambda = Some(lambda);
            repfile::save(&output, &out, &meta)?;
            wrote(&output, &out);
            Ok(())
        }
        Command::Embed { file, output } => {
            let f = repfile::load(&file)?;
            let out = embed_fuchsian(&f.rep)?;
            repfile::save3(&output, &out, &f.meta.then("embed"))?;
            println!("wrote {} ({} in PU(2,1))", output.display(), out.presentation());
            Ok(())
        }
        Command::Toledo { file } => {
            let f = repfile::load3(&file)?;
            if !f.meta.provenance.is_empty() {
                println!("provenance: {}", f.meta.provenance.join(" | "));
            }
            let value = toledo_invariant(&f.rep, &embed_point(&InteriorPoint::I))?;
            println!("toledo {value:.9} ({:.9} pi)", value / PI);
            Ok(())
        }
        Command::Plot { file, output } => {
            let rep = repfile::load(&file)?.rep;
            fs::write(&output, svg::render(&rep)).map_err(|e| Failure::Input(format!("{}: {e}", output.display())))?;
            println!("wrote {}", output.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibretool: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
