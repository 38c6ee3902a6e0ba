//! Exact rational polytopes.
//!
//! A [`Polytope`] is built from a point cloud by an exact hull. Facet normals
//! are stored unnormalized (primitive integer direction), and each facet
//! carries its *scaled measure* `mu = area / |w|`, which is rational. Any
//! product `h(u) * S({u})` with `u = w / |w|` equals `h(w) * mu`, so no square
//! root is ever taken.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::hull::{self, HullOutput};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rat::{self, dot, factorial, Point, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Outward normal, scaled to a primitive integer vector.
    pub normal: Point,
    /// The facet lies in `{x : x · normal = offset}`.
    pub offset: Rat,
    /// (n-1)-dimensional area divided by `|normal|`.
    pub measure: Rat,
    /// Indices into [`Polytope::vertices`] of the vertices on this facet.
    pub vertex_ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cell {
    verts: Vec<usize>,
    volume: Rat,
}

/// Full-dimensional convex polytope with exact rational vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    cells: Vec<Cell>,
    volume: Rat,
    centroid: Point,
}

fn to_integer_points(points: &[Point]) -> Vec<Vec<BigInt>> {
    let lcm = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        .collect()
}

/// Indices of `points` that are vertices of the hull, plus whether every
/// point used by the boundary triangulation is one of them.
fn extreme_points(out: &HullOutput, ipts: &[Vec<BigInt>], n: usize) -> (Vec<usize>, bool) {
    let mut used = vec![false; ipts.len()];
    for f in &out.facets {
        for s in &f.simplices {
            for &v in s {
                used[v] = true;
            }
        }
    }
    let mut vertices = Vec::new();
    let mut clean = true;
    for (i, p) in ipts.iter().enumerate() {
        if !used[i] {
            continue;
        }
        let normals: Vec<Vec<Rat>> = out
            .facets
            .iter()
            .filter(|f| hull::on_facet(f, ipts, p))
            .map(|f| f.normal.iter().cloned().map(Rat::from_integer).collect())
            .collect();
        if linalg::rank(&normals) == n {
            vertices.push(i);
        } else {
            clean = false;
        }
    }
    (vertices, clean)
}

impl Polytope {
    /// Convex hull of a finite point set. Duplicates, interior and
    /// non-extreme boundary points are dropped.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let n = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::DegenerateInput("no points".into()))?;
        if n == 0 {
            return Err(Error::DegenerateInput("zero-dimensional points".into()));
        }
        for p in points {
            check_dim(n, p.len())?;
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        let ipts = to_integer_points(&pts);
        let out = hull::hull(&ipts, n)?;
        let (keep, clean) = extreme_points(&out, &ipts, n);
        if clean && keep.len() == pts.len() {
            return Ok(Self::assemble(n, pts, &out));
        }
        let verts: Vec<Point> = keep.iter().map(|&i| pts[i].clone()).collect();
        let ivs: Vec<Vec<BigInt>> = keep.iter().map(|&i| ipts[i].clone()).collect();
        let out = hull::hull(&ivs, n)?;
        Ok(Self::assemble(n, verts, &out))
    }

    fn assemble(dim: usize, vertices: Vec<Point>, out: &HullOutput) -> Self {
        let n = dim;
        let n_fact = Rat::from_integer(factorial(n as u64));
        let ridge_fact = Rat::from_integer(factorial(n as u64 - 1));
        let apex = &vertices[0];

        let mut facets = Vec::with_capacity(out.facets.len());
        let mut cells = Vec::new();
        for hf in &out.facets {
            let normal: Point = hf.normal.iter().cloned().map(Rat::from_integer).collect();
            let offset = dot(&normal, &vertices[hf.simplices[0][0]]);
            let vertex_ids: Vec<usize> = (0..vertices.len())
                .filter(|&i| dot(&normal, &vertices[i]) == offset)
                .collect();

            let wsq = rat::norm2(&normal);
            let mut measure = Rat::zero();
            for s in &hf.simplices {
                let base = &vertices[s[0]];
                let mut m: Matrix = s[1..]
                    .iter()
                    .map(|&v| rat::sub(&vertices[v], base))
                    .collect();
                m.push(normal.clone());
                measure += linalg::det(&m).abs();
            }
            measure /= &ridge_fact * &wsq;

            if dot(&normal, apex) != offset {
                for s in &hf.simplices {
                    let m: Matrix = s.iter().map(|&v| rat::sub(&vertices[v], apex)).collect();
                    let volume = linalg::det(&m).abs() / &n_fact;
                    let mut verts = vec![0];
                    verts.extend_from_slice(s);
                    cells.push(Cell { verts, volume });
                }
            }
            facets.push(Facet {
                normal,
                offset,
                measure,
                vertex_ids,
            });
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));

        let volume: Rat = cells.iter().map(|c| &c.volume).sum();
        let k = Rat::from_integer(BigInt::from(n + 1));
        let mut centroid = vec![Rat::zero(); n];
        for c in &cells {
            for &v in &c.verts {
                for (acc, x) in centroid.iter_mut().zip(&vertices[v]) {
                    *acc += &c.volume * x;
                }
            }
        }
        let denom = &volume * &k;
        for x in &mut centroid {
            *x /= &denom;
        }

        Self {
            dim,
            vertices,
            facets,
            cells,
            volume,
            centroid,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Irredundant vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facets in lexicographic order of their normals.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    pub fn centroid(&self) -> &Point {
        &self.centroid
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Support function `max { v · w }`.
    pub fn support(&self, w: &[Rat]) -> Result<Rat> {
        check_dim(self.dim, w.len())?;
        if rat::is_zero_vec(w) {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_unchecked(w))
    }

    pub(crate) fn support_unchecked(&self, w: &[Rat]) -> Rat {
        self.vertices
            .iter()
            .map(|v| dot(v, w))
            .max()
            .expect("polytope has vertices")
    }

    /// Image under `x -> A x + t`.
    pub fn transform(&self, a: &Matrix, t: &[Rat]) -> Result<Self> {
        check_dim(self.dim, a.len())?;
        for row in a {
            check_dim(self.dim, row.len())?;
        }
        check_dim(self.dim, t.len())?;
        if linalg::det(a).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| rat::add(&linalg::mat_vec(a, v), t))
            .collect();
        Self::from_points(&pts)
    }

    pub fn translate(&self, t: &[Rat]) -> Result<Self> {
        self.transform(&linalg::identity(self.dim), t)
    }

    /// `c K` for a nonzero scalar `c`.
    pub fn scale(&self, c: &Rat) -> Result<Self> {
        let a: Matrix = linalg::identity(self.dim)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x * c).collect())
            .collect();
        self.transform(&a, &vec![Rat::zero(); self.dim])
    }

    /// `-K`.
    pub fn reflect(&self) -> Self {
        self.scale(&-Rat::one()).expect("reflection is invertible")
    }

    /// Translate so the centroid sits at the origin.
    pub fn centered(&self) -> Self {
        self.translate(&rat::neg(&self.centroid))
            .expect("translation preserves dimension")
    }

    /// Extent `h(w) + h(-w)` along `w`.
    pub fn width(&self, w: &[Rat]) -> Result<Rat> {
        Ok(self.support(w)? + self.support(&rat::neg(w))?)
    }

    /// Section profile along `w`; see [`SectionProfile`].
    pub fn section_profile(&self, w: &[Rat]) -> Result<SectionProfile> {
        check_dim(self.dim, w.len())?;
        if rat::is_zero_vec(w) {
            return Err(Error::ZeroDirection);
        }
        let n = self.dim;
        let heights: Vec<Rat> = self.vertices.iter().map(|v| dot(v, w)).collect();
        let mut breakpoints = heights.clone();
        breakpoints.sort();
        breakpoints.dedup();

        let weight = Rat::from_integer(BigInt::from(n));
        let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
        for win in breakpoints.windows(2) {
            let (lo, hi) = (&win[0], &win[1]);
            let mut piece = Poly::zero();
            for cell in &self.cells {
                let mut knots: Vec<&Rat> = cell.verts.iter().map(|&v| &heights[v]).collect();
                knots.sort();
                if knots[n] <= lo || knots[0] >= hi {
                    continue;
                }
                let dd = bspline_divided_difference(&knots, lo, n);
                piece = &piece + &dd.scale(&(&cell.volume * &weight));
            }
            pieces.push(piece);
        }
        Ok(SectionProfile {
            direction: w.to_vec(),
            breakpoints,
            pieces,
        })
    }
}

/// Divided difference `[x_0, ..., x_n] (x - t)_+^{n-1}` as a polynomial in
/// `t`, valid for `t` strictly between `split` and the next knot above it.
/// Knots `<= split` see the zero function, knots above see `(x - t)^{n-1}`.
/// Repeated knots use scaled derivatives.
fn bspline_divided_difference(knots: &[&Rat], split: &Rat, n: usize) -> Poly {
    let deg = (n - 1) as u32;
    let scaled_derivative = |x: &Rat, k: usize| -> Poly {
        if x <= split || k as u32 > deg {
            Poly::zero()
        } else {
            let c = Rat::from_integer(rat::binomial(deg as u64, k as u64));
            Poly::shifted_power(x, deg - k as u32).scale(&c)
        }
    };
    let mut table: Vec<Poly> = knots.iter().map(|x| scaled_derivative(x, 0)).collect();
    for k in 1..=n {
        for i in 0..=n - k {
            table[i] = if knots[i + k] == knots[i] {
                scaled_derivative(knots[i], k)
            } else {
                let gap = knots[i + k] - knots[i];
                (&table[i + 1] - &table[i]).scale(&gap.recip())
            };
        }
    }
    table.swap_remove(0)
}

/// True iff every vertex of `inner` satisfies every facet inequality of `outer`.
pub fn includes(outer: &Polytope, inner: &Polytope) -> Result<bool> {
    check_dim(outer.dim, inner.dim)?;
    Ok(inner
        .vertices
        .iter()
        .all(|v| outer.facets.iter().all(|f| dot(&f.normal, v) <= f.offset)))
}

/// `K + L`, the hull of all pairwise vertex sums.
pub fn minkowski_sum(k: &Polytope, l: &Polytope) -> Result<Polytope> {
    check_dim(k.dim, l.dim)?;
    let pts: Vec<Point> = k
        .vertices
        .iter()
        .flat_map(|a| l.vertices.iter().map(move |b| rat::add(a, b)))
        .collect();
    Polytope::from_points(&pts)
}

/// Derivative of `t -> Vol(K ∩ {x · w <= t})`, piecewise polynomial in the
/// coordinate `t = x · w`.
///
/// Using `x · w` rather than arclength along `w / |w|` rescales the
/// Euclidean section volume by `1 / |w|`; integrals against `s` and any
/// root-concavity property are unaffected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionProfile {
    pub direction: Point,
    /// Distinct vertex heights `v · w`, ascending.
    pub breakpoints: Vec<Rat>,
    /// `pieces[i]` holds on `[breakpoints[i], breakpoints[i + 1]]`.
    pub pieces: Vec<Poly>,
}

impl SectionProfile {
    pub fn support_interval(&self) -> (&Rat, &Rat) {
        (
            self.breakpoints.first().expect("nonempty"),
            self.breakpoints.last().expect("nonempty"),
        )
    }

    /// Value at `t`; zero outside the support. At an interior breakpoint the
    /// left piece is used; at the support ends, the adjacent piece.
    pub fn eval(&self, t: &Rat) -> Rat {
        let (lo, hi) = self.support_interval();
        if t < lo || t > hi {
            return Rat::zero();
        }
        let idx = self
            .breakpoints
            .windows(2)
            .position(|w| t <= &w[1])
            .unwrap_or(self.pieces.len() - 1);
        self.pieces[idx].eval(t)
    }

    /// `∫ s(t) dt`.
    pub fn integral(&self) -> Rat {
        self.integrate_against(&Poly::constant(Rat::one()))
    }

    /// `∫ t s(t) dt`.
    pub fn first_moment(&self) -> Rat {
        self.integrate_against(&Poly::linear(Rat::zero(), Rat::one()))
    }

    /// `∫ g(t) s(t) dt` for polynomial `g`.
    pub fn integrate_against(&self, g: &Poly) -> Rat {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (p * g).integrate(&w[0], &w[1]))
            .sum()
    }

    /// Cumulative volume `∫_{min}^{t} s`.
    pub fn cumulative(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            if t <= &w[0] {
                break;
            }
            let top = if t < &w[1] { t } else { &w[1] };
            acc += p.integrate(&w[0], top);
        }
        acc
    }
}
