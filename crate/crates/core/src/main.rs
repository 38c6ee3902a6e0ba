use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use godbersen::ak::{ak_point, fm_feasible, helly_audit, subset_cap};
use godbersen::concave::lemma41_check;
use godbersen::harness::{self, GenSpec, Kind, SweepOptions};
use godbersen::inclusion::{directional_moment, tightness_profile};
use godbersen::io::{
    from_json, tightness_rows, to_json, PLConcaveFile, PolytopeFile, ReportJson, SystemFile,
};
use godbersen::mixed_volume::godbersen_report;
use godbersen::rat::{fmt_point, fmt_rat, parse_rat};
use godbersen::{Error, Polytope, Result};

#[derive(Parser)]
#[command(
    name = "godbersen",
    version,
    about = "Exact checks for Godbersen-type mixed volume inequalities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mixed-volume ratios for a polytope.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Only report this index.
        #[arg(long)]
        j: Option<usize>,
    },
    /// A point satisfying h(-w) + (n+1) a.w <= n h(w) for all w.
    Ak {
        #[arg(long)]
        input: PathBuf,
    },
    /// Feasibility of a half-space system, audited over (n+1)-subsets.
    Helly {
        #[arg(long)]
        input: PathBuf,
    },
    /// Centered first moment of the section profile along w.
    Moment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Per-facet comparison of h(-w) with n h(w).
    Tightness {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact integral for a piecewise linear concave function.
    Lemma {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Run every check over a corpus and write CSV.
    Sweep {
        /// JSON list of generator specs; the built-in corpus if absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add a decimal ratio column.
        #[arg(long)]
        floats: bool,
    },
    /// Write a generated polytope as JSON.
    Gen {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        denominator: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Prints `text`; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> Result<Polytope> {
    from_json::<PolytopeFile>(&read(path)?)?.to_polytope()
}

fn parse_direction(s: &str) -> Result<Vec<godbersen::Rat>> {
    s.split(',').map(|c| parse_rat(c.trim())).collect()
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Verify { input, j } => {
            let k = load_polytope(&input)?;
            let report = godbersen_report(&k)?;
            emit(&to_json(&ReportJson::from_report(&report, j)));
        }
        Cmd::Ak { input } => {
            let k = load_polytope(&input)?;
            let a = ak_point(&k)?;
            let out = json!({"witness": fmt_point(&a.witness), "unique": a.unique});
            emit(&serde_json::to_string_pretty(&out).expect("json"));
        }
        Cmd::Helly { input } => {
            let s = from_json::<SystemFile>(&read(&input)?)?.to_system()?;
            let feasible = helly_audit(&s, subset_cap())?;
            let result = fm_feasible(&s);
            let out = json!({
                "feasible": feasible,
                "witness": result.witness.as_ref().map(|w| fmt_point(w)),
                "unique": result.unique,
            });
            emit(&serde_json::to_string_pretty(&out).expect("json"));
        }
        Cmd::Moment { input, w } => {
            let k = load_polytope(&input)?;
            let m = directional_moment(&k, &parse_direction(&w)?)?;
            emit(&json!({ "moment": fmt_rat(&m) }).to_string());
        }
        Cmd::Tightness { input } => {
            let k = load_polytope(&input)?;
            emit(&to_json(&tightness_rows(&tightness_profile(&k))));
        }
        Cmd::Lemma { input, m } => {
            let f = from_json::<PLConcaveFile>(&read(&input)?)?.to_function()?;
            let c = lemma41_check(&f, m)?;
            let out = json!({
                "value": fmt_rat(&c.value),
                "nonneg": c.nonneg,
                "equality": c.equality,
                "equality_characterized": c.equality_characterized,
            });
            emit(&serde_json::to_string_pretty(&out).expect("json"));
        }
        Cmd::Sweep {
            spec,
            out,
            jobs,
            seed,
            floats,
        } => {
            let specs = match spec {
                Some(p) => from_json::<Vec<GenSpec>>(&read(&p)?)?,
                None => harness::default_corpus(),
            };
            let opts = SweepOptions {
                seed,
                jobs,
                floats,
                ..SweepOptions::default()
            };
            let file =
                fs::File::create(&out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            let summary = harness::sweep(&specs, &opts, std::io::BufWriter::new(file))?;
            for o in &summary.observations {
                eprintln!("OBSERVATION: {o}");
            }
            for v in &summary.violations {
                eprintln!("VIOLATION: {v}");
            }
            eprintln!(
                "bodies={} rows={} failed={} asserted={} observations={} violations={}",
                summary.bodies,
                summary.rows,
                summary.failed_bodies,
                summary.asserted,
                summary.observations.len(),
                summary.violations.len()
            );
            if !summary.violations.is_empty() {
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Gen {
            kind,
            dim,
            vertices,
            seed,
            denominator,
            out,
        } => {
            let spec = GenSpec {
                kind,
                dim,
                vertex_count: vertices,
                seed,
                coordinate_denominator_bound: denominator,
                count: 1,
            };
            let k = harness::generate(&spec)?;
            fs::write(&out, to_json(&PolytopeFile::from_polytope(&k)) + "\n")
                .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e @ (Error::TheoremViolation(_) | Error::LemmaViolation(_))) => {
            eprintln!("VIOLATION: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
