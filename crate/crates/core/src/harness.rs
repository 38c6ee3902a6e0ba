//! Polytope generators and the corpus sweep that runs every check per body
//! and writes one CSV row per `(body, j)`.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ak::ak_point;
use crate::concave::slice_root_concavity;
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::inclusion::{facet_moments_vanish, inclusion_in_nk, tightness_profile};
use crate::mixed_volume::godbersen_report;
use crate::rat::{self, int, Point, Rat};

/// First line of every sweep CSV.
pub const CSV_VERSION_LINE: &str = "# godbersen-sweep v1";

const MAX_ATTEMPTS: usize = 16;
const NUMERATOR_BOUND: i64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Simplex,
    Cube,
    CrossPolytope,
    RandomHull,
    RandomSymmetric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Simplex => "simplex",
            Kind::Cube => "cube",
            Kind::CrossPolytope => "cross_polytope",
            Kind::RandomHull => "random_hull",
            Kind::RandomSymmetric => "random_symmetric",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown kind {s:?}")))
    }
}

fn default_denominator() -> u32 {
    4
}

fn default_count() -> usize {
    1
}

/// How to build one body. `count` expands a spec into that many bodies with
/// consecutive seeds when used in a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: Kind,
    pub dim: usize,
    #[serde(default)]
    pub vertex_count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_denominator")]
    pub coordinate_denominator_bound: u32,
    #[serde(default = "default_count")]
    pub count: usize,
}

impl GenSpec {
    pub fn new(kind: Kind, dim: usize) -> Self {
        Self {
            kind,
            dim,
            vertex_count: 0,
            seed: 0,
            coordinate_denominator_bound: default_denominator(),
            count: 1,
        }
    }

    pub fn random(kind: Kind, dim: usize, vertex_count: usize, seed: u64) -> Self {
        Self {
            vertex_count,
            seed,
            ..Self::new(kind, dim)
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::DegenerateInput(m));
        if self.dim < 2 {
            return bad(format!("dim must be at least 2, got {}", self.dim));
        }
        if self.coordinate_denominator_bound == 0 {
            return bad("denominator bound must be positive".into());
        }
        match self.kind {
            Kind::RandomHull if self.vertex_count < self.dim + 1 => bad(format!(
                "random_hull needs at least {} vertices",
                self.dim + 1
            )),
            Kind::RandomSymmetric if self.vertex_count.div_ceil(2) < self.dim => bad(format!(
                "random_symmetric needs at least {} points",
                2 * self.dim
            )),
            _ => Ok(()),
        }
    }
}

fn unit(n: usize, i: usize, v: i64) -> Point {
    let mut e = vec![Rat::from_integer(0.into()); n];
    e[i] = int(v);
    e
}

fn random_point<R: Rng>(rng: &mut R, n: usize, den_bound: u32) -> Point {
    (0..n)
        .map(|_| {
            let num = rng.gen_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND);
            let den = rng.gen_range(1..=den_bound as i64);
            rat::rat(num, den)
        })
        .collect()
}

/// Deterministic body from `spec`; random kinds are fully determined by the seed.
pub fn generate(spec: &GenSpec) -> Result<Polytope> {
    spec.validate()?;
    let n = spec.dim;
    match spec.kind {
        Kind::Simplex => {
            let mut pts = vec![vec![int(0); n]];
            pts.extend((0..n).map(|i| unit(n, i, 1)));
            Polytope::from_points(&pts)
        }
        Kind::Cube => {
            let pts: Vec<Point> = (0..1u64 << n)
                .map(|mask| (0..n).map(|i| int(((mask >> i) & 1) as i64)).collect())
                .collect();
            Polytope::from_points(&pts)
        }
        Kind::CrossPolytope => {
            let pts: Vec<Point> = (0..n)
                .flat_map(|i| [unit(n, i, 1), unit(n, i, -1)])
                .collect();
            Polytope::from_points(&pts)
        }
        Kind::RandomHull | Kind::RandomSymmetric => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut last = None;
            for _ in 0..MAX_ATTEMPTS {
                let pts: Vec<Point> = if spec.kind == Kind::RandomHull {
                    (0..spec.vertex_count)
                        .map(|_| random_point(&mut rng, n, spec.coordinate_denominator_bound))
                        .collect()
                } else {
                    (0..spec.vertex_count.div_ceil(2))
                        .map(|_| random_point(&mut rng, n, spec.coordinate_denominator_bound))
                        .flat_map(|p| [rat::neg(&p), p])
                        .collect()
                };
                match Polytope::from_points(&pts) {
                    Err(e @ Error::DegenerateInput(_)) => last = Some(e),
                    other => return other,
                }
            }
            Err(last.expect("at least one attempt"))
        }
    }
}

/// Seeded random nonzero integer directions.
pub fn random_directions(n: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EC7_1015_D1AE_C715);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w: Point = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
        if !rat::is_zero_vec(&w) {
            out.push(w);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    /// Mixed into every body seed.
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Add a decimal column next to each ratio.
    pub floats: bool,
    pub directions: usize,
    pub samples: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            jobs: 0,
            floats: false,
            directions: 5,
            samples: 17,
        }
    }
}

/// One CSV row. Fields are `None` when the body failed before they were computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub body_id: usize,
    pub kind: Kind,
    pub n: usize,
    pub vertex_count: Option<usize>,
    pub j: Option<usize>,
    pub ratio: Option<Rat>,
    pub tight_count: Option<usize>,
    pub ak_unique: Option<bool>,
    pub moment_zero: Option<bool>,
    pub inclusion_ok: Option<bool>,
    pub root_concave: Option<bool>,
    pub status: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub bodies: usize,
    pub rows: usize,
    pub failed_bodies: usize,
    /// Number of hard (theorem-backed) checks evaluated.
    pub asserted: usize,
    /// Reported-only findings, e.g. ratios above 1 at `2 <= j <= n-2`.
    pub observations: Vec<String>,
    pub violations: Vec<String>,
}

struct BodyOutcome {
    rows: Vec<SweepRow>,
    asserted: usize,
    observations: Vec<String>,
    violations: Vec<String>,
    failed: bool,
}

fn body_seed(spec_seed: u64, index: usize, global: u64) -> u64 {
    spec_seed
        .wrapping_add(index as u64)
        .wrapping_add(global.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Expands `count` and assigns body ids and effective seeds.
pub fn expand(specs: &[GenSpec], global_seed: u64) -> Vec<GenSpec> {
    specs
        .iter()
        .flat_map(|s| {
            (0..s.count).map(move |i| GenSpec {
                seed: body_seed(s.seed, i, global_seed),
                count: 1,
                ..s.clone()
            })
        })
        .collect()
}

fn theorem(violations: &mut Vec<String>, id: usize, e: Error) -> Option<Error> {
    match e {
        Error::TheoremViolation(m) | Error::LemmaViolation(m) => {
            violations.push(format!("body {id}: {m}"));
            None
        }
        other => Some(other),
    }
}

fn check_body(id: usize, spec: &GenSpec, opts: &SweepOptions) -> BodyOutcome {
    let mut out = BodyOutcome {
        rows: Vec::new(),
        asserted: 0,
        observations: Vec::new(),
        violations: Vec::new(),
        failed: false,
    };
    let base = SweepRow {
        body_id: id,
        kind: spec.kind,
        n: spec.dim,
        vertex_count: None,
        j: None,
        ratio: None,
        tight_count: None,
        ak_unique: None,
        moment_zero: None,
        inclusion_ok: None,
        root_concave: None,
        status: "ok".into(),
    };
    let fail = |mut out: BodyOutcome, e: Option<Error>, base: SweepRow| {
        out.failed = true;
        let status = match e {
            Some(e) => format!("error: {e}"),
            None => "violation".into(),
        };
        out.rows.push(SweepRow { status, ..base });
        out
    };

    let k = match generate(spec) {
        Ok(k) => k,
        Err(e) => return fail(out, Some(e), base),
    };
    let n = k.dim();
    let base = SweepRow {
        vertex_count: Some(k.vertices().len()),
        ..base
    };
    let simplex = k.is_simplex();

    let report = match godbersen_report(&k) {
        Ok(r) => r,
        Err(e) => {
            let e = theorem(&mut out.violations, id, e);
            return fail(out, e, base);
        }
    };
    out.asserted += 2;

    let ak = match ak_point(&k) {
        Ok(a) => a,
        Err(e) => {
            let e = theorem(&mut out.violations, id, e);
            return fail(out, e, base);
        }
    };
    out.asserted += 1;
    if simplex {
        out.asserted += 2;
        if !ak.unique {
            out.violations
                .push(format!("body {id}: simplex with non-unique witness"));
        }
        if &ak.witness != k.centroid() {
            out.violations
                .push(format!("body {id}: simplex witness is not the centroid"));
        }
    } else if ak.unique {
        out.observations
            .push(format!("body {id}: unique witness for a non-simplex"));
    }

    let inclusion_ok = match inclusion_in_nk(&k) {
        Ok(b) => b,
        Err(e) => {
            let _ = theorem(&mut out.violations, id, e);
            false
        }
    };
    out.asserted += 1;

    let tight = tightness_profile(&k);
    out.asserted += 1;
    if !tight.holds() {
        out.violations
            .push(format!("body {id}: support inequality fails at a facet"));
    }
    if simplex && !tight.all_tight() {
        out.asserted += 1;
        out.violations
            .push(format!("body {id}: simplex with a slack facet"));
    }
    if !simplex && tight.all_tight() {
        out.observations
            .push(format!("body {id}: all facets tight for a non-simplex"));
    }

    let moment_zero = facet_moments_vanish(&k).unwrap_or(false);
    out.asserted += 1;
    if !moment_zero {
        out.violations
            .push(format!("body {id}: nonzero directional moment"));
    }

    let mut root_concave = true;
    for w in random_directions(n, opts.directions, spec.seed) {
        out.asserted += 1;
        if !slice_root_concavity(&k, &w, opts.samples).unwrap_or(false) {
            root_concave = false;
            out.violations.push(format!(
                "body {id}: section root not concave along {:?}",
                rat::fmt_point(&w)
            ));
        }
    }

    for e in &report.entries {
        if !report.is_proven_index(e.j) && e.ratio > Rat::from_integer(1.into()) {
            out.observations.push(format!(
                "body {id}: ratio {} > 1 at j = {}",
                rat::fmt_rat(&e.ratio),
                e.j
            ));
        }
        out.rows.push(SweepRow {
            j: Some(e.j),
            ratio: Some(e.ratio.clone()),
            tight_count: Some(tight.tight_count()),
            ak_unique: Some(ak.unique),
            moment_zero: Some(moment_zero),
            inclusion_ok: Some(inclusion_ok),
            root_concave: Some(root_concave),
            ..base.clone()
        });
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Writes the versioned header and rows as CSV.
pub fn write_csv<W: Write>(rows: &[SweepRow], floats: bool, mut w: W) -> Result<()> {
    writeln!(w, "{CSV_VERSION_LINE}")?;
    let mut csv = csv::Writer::from_writer(w);
    let mut header = vec![
        "body_id",
        "kind",
        "n",
        "vertex_count",
        "j",
        "ratio",
        "tight_count",
        "ak_unique",
        "moment_zero",
        "inclusion_ok",
        "root_concave",
        "status",
    ];
    if floats {
        header.push("ratio_f64");
    }
    let io = |e: csv::Error| Error::Io(e.to_string());
    csv.write_record(&header).map_err(io)?;
    for r in rows {
        let mut rec = vec![
            r.body_id.to_string(),
            r.kind.to_string(),
            r.n.to_string(),
            opt(&r.vertex_count),
            opt(&r.j),
            r.ratio.as_ref().map(rat::fmt_rat).unwrap_or_default(),
            opt(&r.tight_count),
            opt(&r.ak_unique),
            opt(&r.moment_zero),
            opt(&r.inclusion_ok),
            opt(&r.root_concave),
            r.status.clone(),
        ];
        if floats {
            rec.push(
                r.ratio
                    .as_ref()
                    .map(|x| format!("{:.12}", rat::to_f64(x)))
                    .unwrap_or_default(),
            );
        }
        csv.write_record(&rec).map_err(io)?;
    }
    csv.flush()?;
    Ok(())
}

/// Runs every check on every body of `specs` and writes the CSV to `out`.
/// Row order depends only on the specs, never on the worker count.
pub fn sweep<W: Write>(specs: &[GenSpec], opts: &SweepOptions, out: W) -> Result<SweepSummary> {
    let bodies = expand(specs, opts.seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let outcomes: Vec<BodyOutcome> = pool.install(|| {
        bodies
            .par_iter()
            .enumerate()
            .map(|(id, spec)| check_body(id, spec, opts))
            .collect()
    });

    let mut summary = SweepSummary {
        bodies: bodies.len(),
        ..Default::default()
    };
    let mut rows = Vec::new();
    for o in outcomes {
        summary.asserted += o.asserted;
        summary.failed_bodies += o.failed as usize;
        summary.observations.extend(o.observations);
        summary.violations.extend(o.violations);
        rows.extend(o.rows);
    }
    rows.sort_by_key(|r| (r.body_id, r.j));
    summary.rows = rows.len();
    write_csv(&rows, opts.floats, out)?;
    Ok(summary)
}

/// Built-in corpus used when no spec file is given.
pub fn default_corpus() -> Vec<GenSpec> {
    let mut specs = Vec::new();
    for n in 2..=4 {
        specs.push(GenSpec::new(Kind::Simplex, n));
        specs.push(GenSpec::new(Kind::Cube, n));
        specs.push(GenSpec::new(Kind::CrossPolytope, n));
    }
    for (n, max_v) in [(2usize, 10usize), (3, 9), (4, 8)] {
        specs.push(GenSpec {
            count: 8,
            ..GenSpec::random(Kind::RandomHull, n, max_v, 1000 * n as u64)
        });
        specs.push(GenSpec {
            count: 2,
            ..GenSpec::random(Kind::RandomHull, n, n + 1, 2000 * n as u64)
        });
        specs.push(GenSpec {
            count: 3,
            ..GenSpec::random(Kind::RandomSymmetric, n, 2 * n + 2, 3000 * n as u64)
        });
    }
    specs
}
