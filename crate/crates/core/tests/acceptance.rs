//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{body, corpus, standard_simplex};
use godbersen::ak::{ak_point, ak_system, helly_audit, DEFAULT_SUBSET_CAP};
use godbersen::concave::{bm_check, lemma41_check, random_plconcave, slice_root_concavity};
use godbersen::geometry::minkowski_sum;
use godbersen::harness::{self, generate, random_directions, GenSpec, Kind};
use godbersen::inclusion::{directional_moment, inclusion_in_nk, tightness_profile};
use godbersen::mixed_volume::{godbersen_report, mv_first, mv_profile};
use godbersen::rat::{self, int, rat};
use godbersen::{Polytope, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!(
            "took {:.1}s, limit {:.0}s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        )
    })
}

fn simplex_equality() -> Outcome {
    let start = Instant::now();
    for n in 2..=5 {
        let r = godbersen_report(&standard_simplex(n)).map_err(|e| e.to_string())?;
        for j in [1, n - 1] {
            let ratio = &r.entry(j).ok_or("missing entry")?.ratio;
            ensure(*ratio == int(1), || format!("n={n} j={j} ratio {ratio}"))?;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(5))?;
    Ok(format!(
        "n=2..5, j in {{1, n-1}}, ratio = 1 ({:.2}s)",
        t.as_secs_f64()
    ))
}

fn random_specs() -> Vec<GenSpec> {
    let mut specs = Vec::new();
    for n in 2..=4usize {
        for i in 0..100u64 {
            let vertices = n + 1 + (i as usize % 8);
            let kind = if i % 5 == 4 {
                Kind::RandomSymmetric
            } else {
                Kind::RandomHull
            };
            let vertices = if kind == Kind::RandomSymmetric {
                vertices.max(2 * n)
            } else {
                vertices
            };
            specs.push(GenSpec::random(kind, n, vertices, 10_000 * n as u64 + i));
        }
    }
    specs
}

fn proven_inequality() -> Outcome {
    let start = Instant::now();
    let mut max = Rat::from_integer(0.into());
    let mut simplices = 0;
    for spec in random_specs() {
        let k = generate(&spec).map_err(|e| format!("{spec:?}: {e}"))?;
        let n = k.dim();
        let r = godbersen_report(&k).map_err(|e| format!("{spec:?}: {e}"))?;
        for j in [1, n - 1] {
            let ratio = &r.entry(j).ok_or("missing entry")?.ratio;
            ensure(*ratio <= int(1), || format!("{spec:?} j={j} ratio {ratio}"))?;
            ensure((*ratio == int(1)) == k.is_simplex(), || {
                format!("{spec:?} j={j} equality does not match simplex")
            })?;
            if *ratio > max && !k.is_simplex() {
                max = ratio.clone();
            }
        }
        simplices += k.is_simplex() as usize;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(300))?;
    Ok(format!(
        "300 bodies, 0 violations, {simplices} simplices at ratio 1, max non-simplex ratio {:.6} ({:.1}s)",
        rat::to_f64(&max),
        t.as_secs_f64()
    ))
}

fn same_dim_partner(bodies: &[(GenSpec, Polytope)], i: usize) -> &Polytope {
    let n = bodies[i].1.dim();
    (1..bodies.len())
        .map(|d| &bodies[(i + d) % bodies.len()].1)
        .find(|k| k.dim() == n)
        .unwrap_or(&bodies[i].1)
}

fn interpolation_cross_check(bodies: &[(GenSpec, Polytope)]) -> Outcome {
    let mut pairs = 0;
    for (i, (_, k)) in bodies.iter().enumerate() {
        for l in [k.reflect(), same_dim_partner(bodies, i).clone()] {
            let facet = mv_first(&l, k).map_err(|e| e.to_string())?;
            let profile = mv_profile(k, &l).map_err(|e| e.to_string())?;
            ensure(profile.mixed(1) == &facet, || {
                format!("body {i}: facet {facet} vs {}", profile.mixed(1))
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs agree exactly"))
}

fn triangle_oracle() -> Outcome {
    let t = standard_simplex(2);
    let m = t.reflect();
    let facet = mv_first(&t, &m).map_err(|e| e.to_string())?;
    let interp = mv_profile(&t, &m)
        .map_err(|e| e.to_string())?
        .mixed(1)
        .clone();
    let diff = minkowski_sum(&t, &m).map_err(|e| e.to_string())?;
    ensure(facet == int(1), || format!("facet formula gave {facet}"))?;
    ensure(interp == int(1), || format!("interpolation gave {interp}"))?;
    ensure(*diff.volume() == int(3), || {
        format!("Vol(K-K) = {}", diff.volume())
    })?;
    ensure(diff.vertices().len() == 6, || {
        "difference body is not a hexagon".into()
    })?;
    Ok("V(K,-K) = 1 by both algorithms, Vol(K-K) = 3".into())
}

fn ak_criterion(bodies: &[(GenSpec, Polytope)]) -> Outcome {
    let mut simplices = 0;
    for (i, (_, k)) in bodies.iter().enumerate() {
        let a = ak_point(k).map_err(|e| format!("body {i}: {e}"))?;
        if k.is_simplex() {
            simplices += 1;
            ensure(&a.witness == k.centroid() && a.unique, || {
                format!(
                    "body {i}: simplex witness {:?} unique={}",
                    rat::fmt_point(&a.witness),
                    a.unique
                )
            })?;
        }
    }
    let sq = body(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).centered();
    let s = ak_system(&sq);
    let sixth = rat(1, 6);
    for (x, y) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let corner = vec![&sixth * int(x), &sixth * int(y)];
        ensure(s.satisfied_by(&corner), || {
            format!("corner {x},{y} infeasible")
        })?;
        let outside = rat::scale(&corner, &rat(1001, 1000));
        ensure(!s.satisfied_by(&outside), || {
            format!("beyond corner {x},{y} feasible")
        })?;
    }
    Ok(format!(
        "{} bodies solved, {simplices} simplex witnesses are unique centroids, square region [-1/6,1/6]^2",
        bodies.len()
    ))
}

fn helly_criterion(bodies: &[(GenSpec, Polytope)]) -> Outcome {
    let mut audited = 0;
    for (i, (_, k)) in bodies.iter().enumerate() {
        if k.dim() > 3 || k.facets().len() > 12 {
            continue;
        }
        let ok =
            helly_audit(&ak_system(k), DEFAULT_SUBSET_CAP).map_err(|e| format!("body {i}: {e}"))?;
        ensure(ok, || format!("body {i}: infeasible subsystem"))?;
        audited += 1;
    }
    ensure(audited > 0, || "no body audited".into())?;
    Ok(format!(
        "{audited} bodies audited, every (n+1)-subsystem feasible"
    ))
}

fn inclusion_criterion(bodies: &[(GenSpec, Polytope)]) -> Outcome {
    let mut tight_bodies = 0;
    for (i, (_, k)) in bodies.iter().enumerate() {
        ensure(inclusion_in_nk(k) == Ok(true), || {
            format!("body {i}: inclusion fails")
        })?;
        let p = tightness_profile(k);
        let n_plus_one = k.vertices().len() == k.dim() + 1;
        ensure(p.all_tight() == n_plus_one, || {
            format!(
                "body {i}: all_tight={} with {} vertices",
                p.all_tight(),
                k.vertices().len()
            )
        })?;
        tight_bodies += p.all_tight() as usize;
        for f in k.facets() {
            let m = directional_moment(k, &f.normal).map_err(|e| e.to_string())?;
            ensure(m == int(0), || format!("body {i}: moment {m}"))?;
        }
    }
    Ok(format!(
        "{} bodies included, all-tight exactly for the {tight_bodies} simplices, facet moments 0",
        bodies.len()
    ))
}

fn lemma_criterion() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut checks, mut equalities) = (0, 0);
    for _ in 0..1000 {
        let f = random_plconcave(&mut rng);
        for m in 2..=8 {
            // lemma41_check errors on a negative value or a mismatched
            // equality characterization.
            let c = lemma41_check(&f, m).map_err(|e| format!("{f:?} m={m}: {e}"))?;
            ensure(c.nonneg && c.equality == c.equality_characterized, || {
                format!("{f:?} m={m}")
            })?;
            checks += 1;
            equalities += c.equality as usize;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60))?;
    ensure(equalities > 0, || "no equality case sampled".into())?;
    Ok(format!(
        "{checks} integrals nonnegative, {equalities} equalities all characterized ({:.1}s)",
        t.as_secs_f64()
    ))
}

fn brunn_minkowski_criterion(bodies: &[(GenSpec, Polytope)]) -> Outcome {
    let mut directions = 0;
    for (i, (s, k)) in bodies.iter().enumerate() {
        for w in random_directions(k.dim(), 5, s.seed) {
            let ok = slice_root_concavity(k, &w, 17).map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!("body {i}: not root-concave along {:?}", rat::fmt_point(&w))
            })?;
            directions += 1;
        }
    }
    let mut pairs = 0;
    let mut homothets = 0;
    'outer: for (i, (_, k)) in bodies.iter().enumerate() {
        for (jdx, (_, l)) in bodies.iter().enumerate().skip(i + 1) {
            if pairs >= 90 {
                break 'outer;
            }
            if l.dim() != k.dim() {
                continue;
            }
            let c = bm_check(k, l).map_err(|e| e.to_string())?;
            ensure(c.ok, || format!("pair ({i},{jdx}) fails"))?;
            ensure(!c.equality, || format!("pair ({i},{jdx}) flagged equal"))?;
            pairs += 1;
        }
    }
    for (i, (_, k)) in bodies
        .iter()
        .enumerate()
        .step_by(bodies.len().div_ceil(10).max(1))
    {
        let t: Vec<Rat> = (0..k.dim()).map(|c| rat(c as i64 + 1, 3)).collect();
        let l = k
            .scale(&rat(7, 4))
            .and_then(|s| s.translate(&t))
            .map_err(|e| e.to_string())?;
        let c = bm_check(k, &l).map_err(|e| e.to_string())?;
        ensure(c.ok && c.equality, || {
            format!("homothet of body {i} not flagged equal")
        })?;
        pairs += 1;
        homothets += 1;
    }
    Ok(format!(
        "{directions} directions root-concave; {pairs} pairs ok, equality exactly for the {homothets} homothets"
    ))
}

fn write_spec(dir: &std::path::Path) -> std::path::PathBuf {
    let p = dir.join("corpus.json");
    std::fs::write(
        &p,
        serde_json::to_string(&harness::default_corpus()).unwrap(),
    )
    .unwrap();
    p
}

fn sweep_cli(spec: &std::path::Path, out: &std::path::Path, jobs: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_godbersen"))
        .args(["sweep", "--spec"])
        .arg(spec)
        .arg("--out")
        .arg(out)
        .args(["--seed", "42", "--jobs", jobs])
        .output()
        .expect("binary runs")
}

fn general_j_criterion(dir: &std::path::Path) -> Outcome {
    let spec = write_spec(dir);
    let out = dir.join("general.csv");
    let run = sweep_cli(&spec, &out, "2");
    let stderr = String::from_utf8_lossy(&run.stderr);
    ensure(run.status.success(), || {
        format!("exit {:?}: {stderr}", run.status.code())
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(&out)
        .map_err(|e| e.to_string())?;
    let (mut general, mut above) = (0, 0);
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let (n, j): (usize, usize) = match (rec[2].parse(), rec[4].parse()) {
            (Ok(n), Ok(j)) => (n, j),
            _ => continue,
        };
        if j >= 2 && j + 2 <= n {
            general += 1;
            let r = rat::parse_rat(&rec[5]).map_err(|e| e.to_string())?;
            above += (r > int(1)) as usize;
        }
    }
    let observations = stderr
        .lines()
        .filter(|l| l.starts_with("OBSERVATION"))
        .count();
    ensure(observations >= above, || "exceedance not logged".into())?;
    Ok(format!(
        "{general} rows with 2 <= j <= n-2, {above} above 1, {observations} observations, exit 0"
    ))
}

fn determinism_criterion(dir: &std::path::Path) -> Outcome {
    let spec = write_spec(dir);
    let mut outputs = Vec::new();
    for (i, jobs) in ["1", "4"].iter().enumerate() {
        let out = dir.join(format!("det{i}.csv"));
        let run = sweep_cli(&spec, &out, jobs);
        ensure(run.status.success(), || {
            String::from_utf8_lossy(&run.stderr).into_owned()
        })?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || {
        "CSV differs between runs".into()
    })?;
    Ok(format!(
        "two runs with seed 42 byte-identical ({} bytes)",
        outputs[0].len()
    ))
}

fn main() -> ExitCode {
    let bodies = corpus();
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("simplex equality", Box::new(simplex_equality)),
        (
            "proven-index inequality on 300 random bodies",
            Box::new(proven_inequality),
        ),
        (
            "facet formula vs interpolation",
            Box::new(|| interpolation_cross_check(&bodies)),
        ),
        ("triangle difference body", Box::new(triangle_oracle)),
        ("halfspace point", Box::new(|| ak_criterion(&bodies))),
        ("Helly audit", Box::new(|| helly_criterion(&bodies))),
        (
            "reflected body in dilate",
            Box::new(|| inclusion_criterion(&bodies)),
        ),
        ("one-dimensional integral", Box::new(lemma_criterion)),
        (
            "section roots and Brunn-Minkowski",
            Box::new(|| brunn_minkowski_criterion(&bodies)),
        ),
        (
            "general-index sweep",
            Box::new(|| general_j_criterion(dir.path())),
        ),
        (
            "sweep determinism",
            Box::new(|| determinism_criterion(dir.path())),
        ),
    ];
    println!("acceptance: {} corpus bodies", bodies.len());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
