#![allow(dead_code)]

use godbersen::harness::{self, GenSpec};
use godbersen::rat::{int, rat};
use godbersen::{Point, Polytope, Rat};
use proptest::prelude::*;

pub fn pt(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn body(points: &[&[i64]]) -> Polytope {
    let pts: Vec<Point> = points.iter().map(|p| pt(p)).collect();
    Polytope::from_points(&pts).unwrap()
}

pub fn standard_simplex(n: usize) -> Polytope {
    let mut pts = vec![vec![int(0); n]];
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        pts.push(e);
    }
    Polytope::from_points(&pts).unwrap()
}

/// The built-in corpus as `(spec, body)` pairs; bodies that fail to generate
/// are skipped.
pub fn corpus() -> Vec<(GenSpec, Polytope)> {
    harness::expand(&harness::default_corpus(), 0)
        .into_iter()
        .filter_map(|s| harness::generate(&s).ok().map(|k| (s, k)))
        .collect()
}

/// Small rational points: numerators in `[-6, 6]`, denominators `1..=3`.
pub fn arb_point(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect())
}

/// Full-dimensional polytope from `n+1 ..= max` random points.
pub fn arb_polytope(n: usize, max: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(arb_point(n), n + 1..=max)
        .prop_filter_map("degenerate", |pts| Polytope::from_points(&pts).ok())
}

pub fn arb_direction(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-4i64..=4, n)
        .prop_filter("zero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| v.into_iter().map(int).collect())
}

pub fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|m| {
            m.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect()
        })
        .prop_filter("singular", |m: &Vec<Vec<Rat>>| {
            !num_traits::Zero::is_zero(&godbersen::linalg::det(m))
        })
}

// Independent planar oracles: monotone-chain hull and shoelace area.

fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

pub fn hull_2d(points: &[Point]) -> Vec<Point> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let zero = Rat::from_integer(0.into());
    let mut lower: Vec<Point> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q) <= zero
        {
            lower.pop();
        }
        lower.push(q.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q) <= zero
        {
            upper.pop();
        }
        upper.push(q.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Area of a counter-clockwise polygon.
pub fn shoelace(poly: &[Point]) -> Rat {
    let mut twice = Rat::from_integer(0.into());
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        twice += &a[0] * &b[1] - &a[1] * &b[0];
    }
    twice / int(2)
}

pub fn minkowski_2d(a: &[Point], b: &[Point]) -> Vec<Point> {
    let sums: Vec<Point> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| vec![&p[0] + &q[0], &p[1] + &q[1]]))
        .collect();
    hull_2d(&sums)
}

/// Part of a counter-clockwise polygon with `x.w <= t` (Sutherland–Hodgman).
pub fn clip_2d(poly: &[Point], w: &[Rat], t: &Rat) -> Vec<Point> {
    let val = |p: &Point| &p[0] * &w[0] + &p[1] * &w[1] - t;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (va, vb) = (val(a), val(b));
        let zero = Rat::from_integer(0.into());
        if va <= zero {
            out.push(a.clone());
        }
        if (va < zero && vb > zero) || (va > zero && vb < zero) {
            let s = &va / (&va - &vb);
            out.push(vec![
                &a[0] + &s * (&b[0] - &a[0]),
                &a[1] + &s * (&b[1] - &a[1]),
            ]);
        }
    }
    out
}
