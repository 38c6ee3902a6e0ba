//! Exact beneath-beyond convex hull over integer coordinates.
//!
//! The boundary is kept as a list of oriented (n-1)-simplices. A point is
//! added only when it lies strictly beyond at least one of them; points on a
//! supporting hyperplane are treated as beneath, so coplanar configurations
//! yield several coplanar simplices that the caller merges into one facet.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::det_int;

#[derive(Debug, Clone)]
struct Simplex {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
    alive: bool,
}

/// One supporting hyperplane `normal · x = offset` together with the boundary
/// simplices that triangulate the facet lying in it.
#[derive(Debug, Clone)]
pub(crate) struct HullFacet {
    /// Primitive integer normal, outward.
    pub normal: Vec<BigInt>,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub(crate) struct HullOutput {
    /// Facets keyed (and ordered) by primitive outward normal.
    pub facets: Vec<HullFacet>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Primitive normal of the hyperplane through `pts` (exactly n points in R^n),
/// via signed cofactors of the difference matrix. Zero if the points are
/// affinely dependent.
fn hyperplane_normal(pts: &[&Vec<BigInt>]) -> Vec<BigInt> {
    let n = pts[0].len();
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal: Vec<BigInt> = (0..n)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != k)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det_int(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for x in &mut normal {
            *x /= &g;
        }
    }
    normal
}

/// Indices of n+1 affinely independent points, chosen greedily in input order.
fn initial_simplex(points: &[Vec<BigInt>], n: usize) -> Option<Vec<usize>> {
    use crate::rat::Rat;
    let mut chosen = vec![0usize];
    // Row-echelon basis of the differences p_i - p_0 found so far.
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == n + 1 {
            break;
        }
        let mut v: Vec<Rat> = p
            .iter()
            .zip(&points[0])
            .map(|(a, b)| Rat::from_integer(a - b))
            .collect();
        for (pc, row) in &basis {
            if !v[*pc].is_zero() {
                let f = &v[*pc] / &row[*pc];
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            basis.push((pc, v));
            chosen.push(i);
        }
    }
    (chosen.len() == n + 1).then_some(chosen)
}

/// Hull of distinct integer points in R^n.
pub(crate) fn hull(points: &[Vec<BigInt>], n: usize) -> Result<HullOutput> {
    if points.len() < n + 1 {
        return Err(Error::DegenerateInput(format!(
            "{} points cannot span R^{n}",
            points.len()
        )));
    }
    let init = initial_simplex(points, n)
        .ok_or_else(|| Error::DegenerateInput(format!("points do not span R^{n}")))?;

    // (n+1) * interior point, kept integral.
    let k = BigInt::from(n + 1);
    let interior: Vec<BigInt> = (0..n)
        .map(|c| {
            init.iter()
                .fold(BigInt::zero(), |acc, &i| acc + &points[i][c])
        })
        .collect();

    let make = |verts: Vec<usize>| -> Simplex {
        let pts: Vec<&Vec<BigInt>> = verts.iter().map(|&i| &points[i]).collect();
        let mut normal = hyperplane_normal(&pts);
        let mut offset = dot(&normal, &points[verts[0]]);
        if dot(&normal, &interior) > &offset * &k {
            for x in &mut normal {
                *x = -&*x;
            }
            offset = -offset;
        }
        debug_assert!(dot(&normal, &interior) < &offset * &k);
        Simplex {
            verts,
            normal,
            offset,
            alive: true,
        }
    };

    let mut simplices: Vec<Simplex> = (0..=n)
        .map(|skip| {
            init.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i)
                .collect()
        })
        .map(make)
        .collect();

    let mut in_init = vec![false; points.len()];
    for &i in &init {
        in_init[i] = true;
    }

    let mut dead = 0usize;
    for (pi, p) in points.iter().enumerate() {
        if in_init[pi] {
            continue;
        }
        let visible: Vec<usize> = simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive && dot(&s.normal, p) > s.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, u32> = HashMap::new();
        for &vi in &visible {
            let verts = &simplices[vi].verts;
            for skip in 0..verts.len() {
                let mut ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        for &vi in &visible {
            simplices[vi].alive = false;
        }
        dead += visible.len();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort_unstable();
        for mut ridge in horizon {
            ridge.push(pi);
            simplices.push(make(ridge));
        }
        if dead > simplices.len() / 2 {
            simplices.retain(|s| s.alive);
            dead = 0;
        }
    }

    let mut grouped: BTreeMap<Vec<BigInt>, Vec<Vec<usize>>> = BTreeMap::new();
    for s in simplices.into_iter().filter(|s| s.alive) {
        debug_assert!(s.normal.iter().any(|x| !x.is_zero()));
        grouped.entry(s.normal).or_default().push(s.verts);
    }
    let facets = grouped
        .into_iter()
        .map(|(normal, simplices)| HullFacet { normal, simplices })
        .collect();
    Ok(HullOutput { facets })
}

/// True when `p` lies on the hyperplane of `facet` (whose simplices reference `points`).
pub(crate) fn on_facet(facet: &HullFacet, points: &[Vec<BigInt>], p: &[BigInt]) -> bool {
    let anchor = &points[facet.simplices[0][0]];
    dot(&facet.normal, p) == dot(&facet.normal, anchor)
}
