//! The halfspace system whose solutions `a` satisfy
//! `h_{-K+a}(u) <= n h_{K-a}(u)` at every facet normal `u` of `K`, and an
//! exact Fourier–Motzkin feasibility solver for it.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geometry::Polytope;
use crate::linalg::{self, Matrix};
use crate::lp::{self, LpOutcome};
use crate::rat::{self, dot, Point, Rat};

/// Default cap on the number of `(n+1)`-subsets the Helly audit will solve.
pub const DEFAULT_SUBSET_CAP: u128 = 200_000;

/// `{a : a · normal <= rhs}`, with `normal` unnormalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Point,
    pub rhs: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl System {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::DegenerateInput("empty system".into()));
        }
        for h in &halfspaces {
            check_dim(dim, h.normal.len())?;
            if rat::is_zero_vec(&h.normal) {
                return Err(Error::ZeroDirection);
            }
        }
        Ok(Self { dim, halfspaces })
    }

    pub fn satisfied_by(&self, a: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| dot(&h.normal, a) <= h.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub status: Status,
    pub witness: Option<Point>,
    /// The feasible region is a single point.
    pub unique: bool,
}

impl FeasibilityResult {
    fn infeasible() -> Self {
        Self {
            status: Status::Infeasible,
            witness: None,
            unique: false,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// One `(n+1)`-scaled row per facet:
/// `a · w <= (n h(w) - h(-w)) / (n + 1)`.
pub fn ak_system(k: &Polytope) -> System {
    let n = k.dim();
    let np1 = Rat::from_integer(BigInt::from(n + 1));
    let nr = Rat::from_integer(BigInt::from(n));
    let halfspaces = k
        .facets()
        .iter()
        .map(|f| {
            let up = k.support_unchecked(&f.normal);
            let down = k.support_unchecked(&rat::neg(&f.normal));
            HalfSpace {
                normal: f.normal.clone(),
                rhs: (&nr * up - down) / &np1,
            }
        })
        .collect();
    System { dim: n, halfspaces }
}

#[derive(Debug, Clone)]
struct Row {
    coef: Vec<Rat>,
    rhs: Rat,
    /// Indices of the original rows this one was combined from.
    hist: Vec<u32>,
}

fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().merge(b.iter()).dedup().copied().collect()
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

enum Pruned {
    Rows(Vec<Row>),
    Contradiction,
}

/// Drops trivially true rows, detects `0 <= negative`, and removes a row when
/// a parallel row is at least as tight and was built from a subset of its
/// originals.
fn prune(rows: Vec<Row>) -> Pruned {
    let mut groups: BTreeMap<Vec<Rat>, Vec<Row>> = BTreeMap::new();
    for mut row in rows {
        let Some(lead) = row.coef.iter().find(|c| !c.is_zero()).map(Rat::abs) else {
            if row.rhs.is_negative() {
                return Pruned::Contradiction;
            }
            continue;
        };
        if !lead.is_one() {
            for c in &mut row.coef {
                *c /= &lead;
            }
            row.rhs /= &lead;
        }
        let bucket = groups.entry(row.coef.clone()).or_default();
        if bucket
            .iter()
            .any(|o| o.rhs <= row.rhs && is_subset(&o.hist, &row.hist))
        {
            continue;
        }
        bucket.retain(|o| !(row.rhs <= o.rhs && is_subset(&row.hist, &o.hist)));
        bucket.push(row);
    }
    Pruned::Rows(groups.into_values().flatten().collect())
}

/// Kohler's test: a combination of the originals `hist` is irredundant only if
/// their coefficients on the eliminated columns `k..n` have rank `|hist| - 1`.
fn kohler_keeps(originals: &[Row], hist: &[u32], k: usize) -> bool {
    let m: Matrix = hist
        .iter()
        .map(|&i| originals[i as usize].coef[k..].to_vec())
        .collect();
    linalg::rank(&m) + 1 == hist.len()
}

/// Eliminates `x_k` from rows involving `x_0..=x_k`.
fn eliminate(originals: &[Row], rows: &[Row], k: usize, eliminated: usize) -> Vec<Row> {
    let max_hist = eliminated + 1;
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coef[k].is_positive() {
            pos.push(r);
        } else if r.coef[k].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let hist = union(&p.hist, &q.hist);
            // Chernikov: a combination of more than `eliminated + 1` originals is redundant.
            if hist.len() > max_hist || (hist.len() > 2 && !kohler_keeps(originals, &hist, k)) {
                continue;
            }
            let fp = -&q.coef[k];
            let fq = &p.coef[k];
            let coef = p
                .coef
                .iter()
                .zip(&q.coef)
                .map(|(a, b)| a * &fp + b * fq)
                .collect();
            let rhs = &p.rhs * &fp + &q.rhs * fq;
            out.push(Row { coef, rhs, hist });
        }
    }
    out
}

/// Exact feasibility by Fourier–Motzkin elimination of `x_{n-1}, ..., x_0`.
///
/// The witness comes from back-substitution in order `x_0, x_1, ...`: the
/// midpoint of each bounded interval, the endpoint moved by 1 into the
/// interval when only one side is bounded, and 0 when unconstrained.
pub fn fm_feasible(s: &System) -> FeasibilityResult {
    let n = s.dim;
    let infeasible = FeasibilityResult::infeasible();
    let initial: Vec<Row> = s
        .halfspaces
        .iter()
        .enumerate()
        .map(|(i, h)| Row {
            coef: h.normal.clone(),
            rhs: h.rhs.clone(),
            hist: vec![i as u32],
        })
        .collect();
    // stages[k] involves only x_0..x_{k-1}.
    let mut stages: Vec<Vec<Row>> = vec![Vec::new(); n + 1];
    stages[n] = match prune(initial.clone()) {
        Pruned::Rows(r) => r,
        Pruned::Contradiction => return infeasible,
    };
    for k in (0..n).rev() {
        let next = eliminate(&initial, &stages[k + 1], k, n - k);
        stages[k] = match prune(next) {
            Pruned::Rows(r) => r,
            Pruned::Contradiction => return infeasible,
        };
    }

    let mut x = vec![Rat::zero(); n];
    let mut unique = true;
    for k in 0..n {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for r in &stages[k + 1] {
            if r.coef[k].is_zero() {
                continue;
            }
            let partial: Rat = (0..k).map(|i| &r.coef[i] * &x[i]).sum();
            let bound = (&r.rhs - partial) / &r.coef[k];
            if r.coef[k].is_positive() {
                if hi.as_ref().is_none_or(|h| &bound < h) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().is_none_or(|l| &bound > l) {
                lo = Some(bound);
            }
        }
        x[k] = pick(lo, hi, &mut unique);
    }
    debug_assert!(s.satisfied_by(&x));
    FeasibilityResult {
        status: Status::Feasible,
        witness: Some(x),
        unique,
    }
}

/// Back-substitution choice for one coordinate given its feasible interval.
fn pick(lo: Option<Rat>, hi: Option<Rat>, unique: &mut bool) -> Rat {
    match (lo, hi) {
        (Some(l), Some(h)) => {
            debug_assert!(l <= h, "back-substitution interval empty");
            if l != h {
                *unique = false;
            }
            (l + h) / Rat::from_integer(BigInt::from(2))
        }
        (Some(l), None) => {
            *unique = false;
            l + Rat::one()
        }
        (None, Some(h)) => {
            *unique = false;
            h - Rat::one()
        }
        (None, None) => {
            *unique = false;
            Rat::zero()
        }
    }
}

/// Same witness and uniqueness flag as [`fm_feasible`], computed with exact
/// linear programs: the interval for `x_k` is the range of `x_k` over the
/// system with `x_0..x_{k-1}` fixed, which is what elimination produces.
pub fn lp_feasible(s: &System) -> FeasibilityResult {
    let n = s.dim;
    let mut x: Vec<Rat> = Vec::with_capacity(n);
    let mut unique = true;
    for k in 0..n {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for h in &s.halfspaces {
            let fixed: Rat = (0..k).map(|i| &h.normal[i] * &x[i]).sum();
            let rest = h.normal[k..].to_vec();
            let rhs = &h.rhs - fixed;
            if rest.iter().all(Zero::is_zero) {
                if rhs.is_negative() {
                    return FeasibilityResult::infeasible();
                }
                continue;
            }
            a.push(rest);
            b.push(rhs);
        }
        let mut c = vec![Rat::zero(); n - k];
        c[0] = Rat::one();
        let hi = match lp::maximize(&a, &b, &c) {
            LpOutcome::Infeasible => return FeasibilityResult::infeasible(),
            LpOutcome::Unbounded => None,
            LpOutcome::Optimal(v) => Some(v),
        };
        c[0] = -Rat::one();
        let lo = match lp::maximize(&a, &b, &c) {
            LpOutcome::Infeasible => return FeasibilityResult::infeasible(),
            LpOutcome::Unbounded => None,
            LpOutcome::Optimal(v) => Some(-v),
        };
        x.push(pick(lo, hi, &mut unique));
    }
    debug_assert!(s.satisfied_by(&x));
    FeasibilityResult {
        status: Status::Feasible,
        witness: Some(x),
        unique,
    }
}

/// Systems up to this many rows go through elimination, larger ones through
/// linear programming.
pub const FM_ROW_LIMIT: usize = 16;

/// Exact feasibility, witness and uniqueness for `s`.
pub fn feasible(s: &System) -> FeasibilityResult {
    if s.halfspaces.len() <= FM_ROW_LIMIT {
        fm_feasible(s)
    } else {
        lp_feasible(s)
    }
}

/// A point of the halfspace intersection for `K`, certified exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkPoint {
    pub witness: Point,
    pub unique: bool,
}

/// Solves [`ak_system`] and checks `h(-w) + (n+1) a·w <= n h(w)` at every
/// facet normal. Infeasibility is reported as [`Error::TheoremViolation`].
pub fn ak_point(k: &Polytope) -> Result<AkPoint> {
    let system = ak_system(k);
    let res = feasible(&system);
    let Some(a) = res.witness else {
        return Err(Error::TheoremViolation(
            "halfspace system is infeasible".into(),
        ));
    };
    let n = Rat::from_integer(BigInt::from(k.dim()));
    let np1 = &n + Rat::one();
    for f in k.facets() {
        let lhs = k.support_unchecked(&rat::neg(&f.normal)) + &np1 * dot(&a, &f.normal);
        let rhs = &n * k.support_unchecked(&f.normal);
        if lhs > rhs {
            return Err(Error::TheoremViolation(format!(
                "witness fails at normal {:?}",
                rat::fmt_point(&f.normal)
            )));
        }
    }
    Ok(AkPoint {
        witness: a,
        unique: res.unique,
    })
}

/// Subset cap from `GODBERSEN_SUBSET_CAP`, else [`DEFAULT_SUBSET_CAP`].
pub fn subset_cap() -> u128 {
    std::env::var("GODBERSEN_SUBSET_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SUBSET_CAP)
}

fn choose(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

/// True iff every `(n+1)`-subsystem is feasible. By Helly's theorem this
/// must agree with the feasibility of the whole system; a disagreement is
/// reported as [`Error::TheoremViolation`].
pub fn helly_audit(s: &System, cap: u128) -> Result<bool> {
    let n = s.dim;
    let m = s.halfspaces.len();
    if m < n + 1 {
        return Ok(true);
    }
    let subsets = choose(m, n + 1);
    if subsets > cap {
        return Err(Error::CombinatorialBlowup { subsets, cap });
    }
    let all_ok = (0..m).combinations(n + 1).all(|idx| {
        let sub = System {
            dim: n,
            halfspaces: idx.iter().map(|&i| s.halfspaces[i].clone()).collect(),
        };
        fm_feasible(&sub).is_feasible()
    });
    if all_ok != feasible(s).is_feasible() {
        return Err(Error::TheoremViolation(
            "Helly audit disagrees with full-system feasibility".into(),
        ));
    }
    Ok(all_ok)
}

/// Compares feasibility for `K` and `A K`, and checks that `A a` solves the
/// system of `A K` whenever `a` solves that of `K`. Facet normals of `A K`
/// must be the images `A^{-T} w` of those of `K`, up to positive scale.
pub fn gl_invariance_check(k: &Polytope, a: &Matrix) -> Result<bool> {
    let n = k.dim();
    let image = k.transform(a, &vec![Rat::zero(); n])?;
    let base = feasible(&ak_system(k));
    let mapped_system = ak_system(&image);
    let mapped = feasible(&mapped_system);
    if base.status != mapped.status {
        return Ok(false);
    }
    let inv_t = linalg::transpose(&linalg::inverse(a)?);
    let image_normals: Vec<Point> = image.facets().iter().map(|f| f.normal.clone()).collect();
    let normals_match = k.facets().iter().all(|f| {
        let w = linalg::mat_vec(&inv_t, &f.normal);
        image_normals.iter().any(|v| positively_parallel(&w, v))
    }) && image_normals.len() == k.facets().len();
    if !normals_match {
        return Ok(false);
    }
    if let Some(w) = &base.witness {
        let aw = linalg::mat_vec(a, w);
        if !mapped_system.satisfied_by(&aw) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn positively_parallel(a: &[Rat], b: &[Rat]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() || a[i].is_positive() != b[i].is_positive() {
        return false;
    }
    let f = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| x * &f == *y)
}
