//! Piecewise-linear concave functions on `[0, 1]`, the integral
//! `∫₀¹ (r - 1/(m+1)) f(r)^{m-1} dr`, and the slice-concavity and
//! Brunn–Minkowski checks that connect it to polytopes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{minkowski_sum, Polytope};
use crate::poly::Poly;
use crate::rat::{self, Rat};

/// Relative tolerance for the floating-point checks in this module.
pub const FLOAT_TOL: f64 = 1e-9;

/// Nonnegative concave function on `[0, 1]`, linear between knots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLConcave {
    knots: Vec<Rat>,
    values: Vec<Rat>,
}

impl PLConcave {
    pub fn new(knots: Vec<Rat>, values: Vec<Rat>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() {
            return Err(Error::NotConcave(
                "need at least two knots and one value per knot".into(),
            ));
        }
        if !knots[0].is_zero() || !knots[knots.len() - 1].is_one() {
            return Err(Error::NotConcave("domain must be exactly [0, 1]".into()));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotConcave(
                "knots must be strictly increasing".into(),
            ));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::NotConcave("negative value".into()));
        }
        let f = Self { knots, values };
        if f.slopes().windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::NotConcave("slopes increase".into()));
        }
        Ok(f)
    }

    pub fn knots(&self) -> &[Rat] {
        &self.knots
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn slopes(&self) -> Vec<Rat> {
        self.knots
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(k, v)| (&v[1] - &v[0]) / (&k[1] - &k[0]))
            .collect()
    }

    /// Linear on all of `[0, 1]`.
    pub fn is_single_slope(&self) -> bool {
        let s = self.slopes();
        s.iter().all(|x| x == &s[0])
    }

    pub fn eval(&self, r: &Rat) -> Rat {
        let i = self
            .knots
            .windows(2)
            .position(|w| r <= &w[1])
            .unwrap_or(self.knots.len() - 2);
        self.piece(i).eval(r)
    }

    /// `c f` for `c >= 0`.
    pub fn scale(&self, c: &Rat) -> Result<Self> {
        Self::new(
            self.knots.clone(),
            self.values.iter().map(|v| v * c).collect(),
        )
    }

    fn piece(&self, i: usize) -> Poly {
        let slope = (&self.values[i + 1] - &self.values[i]) / (&self.knots[i + 1] - &self.knots[i]);
        Poly::linear(&self.values[i] - &slope * &self.knots[i], slope)
    }
}

/// `∫₀¹ (r - 1/(m+1)) f(r)^{m-1} dr`, exact.
pub fn godbersen_integral(f: &PLConcave, m: u32) -> Result<Rat> {
    if m < 2 {
        return Err(Error::InvalidM(m));
    }
    let shift = Rat::new(BigInt::one(), BigInt::from(m + 1));
    let weight = Poly::linear(-shift, Rat::one());
    Ok((0..f.knots.len() - 1)
        .map(|i| (&weight * &f.piece(i).pow(m - 1)).integrate(&f.knots[i], &f.knots[i + 1]))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma41Check {
    pub value: Rat,
    pub nonneg: bool,
    pub equality: bool,
    /// `f(1) = 0` and `f` is linear.
    pub equality_characterized: bool,
}

/// Evaluates the integral and checks both the sign and the equality
/// characterization; either failing is an [`Error::LemmaViolation`].
pub fn lemma41_check(f: &PLConcave, m: u32) -> Result<Lemma41Check> {
    let value = godbersen_integral(f, m)?;
    let nonneg = !value.is_negative();
    let equality = value.is_zero();
    let last = f.values.last().expect("at least two knots");
    let equality_characterized = last.is_zero() && f.is_single_slope();
    if !nonneg {
        return Err(Error::LemmaViolation(format!(
            "integral {} < 0 for m = {m}",
            rat::fmt_rat(&value)
        )));
    }
    if equality != equality_characterized {
        return Err(Error::LemmaViolation(format!(
            "equality {equality} but characterization {equality_characterized} for m = {m}"
        )));
    }
    Ok(Lemma41Check {
        value,
        nonneg,
        equality,
        equality_characterized,
    })
}

/// Random concave profile: up to 8 pieces with sorted random slopes,
/// integrated from 0 and shifted so the minimum is 0, then lifted by a
/// random nonnegative constant half of the time.
pub fn random_plconcave<R: Rng + ?Sized>(rng: &mut R) -> PLConcave {
    let pieces = rng.gen_range(1..=8usize);
    let mut interior: Vec<Rat> = (0..pieces - 1)
        .map(|_| rat::rat(rng.gen_range(1..64), 64))
        .collect();
    interior.sort();
    interior.dedup();
    let mut knots = vec![Rat::zero()];
    knots.extend(interior);
    knots.push(Rat::one());

    let mut slopes: Vec<Rat> = (0..knots.len() - 1)
        .map(|_| rat::rat(rng.gen_range(-20..=20), 4))
        .collect();
    slopes.sort_by(|a, b| b.cmp(a));

    let mut values = vec![Rat::zero()];
    for (i, s) in slopes.iter().enumerate() {
        let next = &values[i] + s * (&knots[i + 1] - &knots[i]);
        values.push(next);
    }
    let min = values.iter().min().cloned().expect("nonempty");
    let lift = if rng.gen_bool(0.5) {
        rat::rat(rng.gen_range(0..=16), 8)
    } else {
        Rat::zero()
    };
    for v in &mut values {
        *v = &*v - &min + &lift;
    }
    PLConcave::new(knots, values).expect("construction is concave and nonnegative")
}

/// Midpoint concavity of `s(t)^{1/(n-1)}` for the section profile along `w`.
///
/// For `n = 2` the profile itself must be concave, which is checked exactly
/// (continuity and nonincreasing slopes). Otherwise the profile is evaluated
/// exactly on `samples` equispaced points of its support and every
/// equispaced triple is tested in floating point at relative tolerance
/// [`FLOAT_TOL`].
pub fn slice_root_concavity(k: &Polytope, w: &[Rat], samples: usize) -> Result<bool> {
    if samples < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 samples, got {samples}"
        )));
    }
    let s = k.section_profile(w)?;
    let n = k.dim();
    if n == 1 {
        return Ok(true);
    }
    if n == 2 {
        let interior = &s.breakpoints[1..s.breakpoints.len() - 1];
        let continuous = interior
            .iter()
            .zip(s.pieces.windows(2))
            .all(|(t, p)| p[0].eval(t) == p[1].eval(t));
        let slope = |p: &Poly| p.coeffs().get(1).cloned().unwrap_or_else(Rat::zero);
        let nonincreasing = s.pieces.windows(2).all(|p| slope(&p[1]) <= slope(&p[0]));
        return Ok(continuous && nonincreasing);
    }
    let (lo, hi) = s.support_interval();
    let step = (hi - lo) / Rat::from_integer(BigInt::from(samples - 1));
    let exponent = 1.0 / (n - 1) as f64;
    let g: Vec<f64> = (0..samples)
        .map(|i| {
            let t = lo + &step * Rat::from_integer(BigInt::from(i));
            rat::to_f64(&s.eval(&t)).max(0.0).powf(exponent)
        })
        .collect();
    for k in 1..samples {
        for i in 0..samples {
            let j = i + 2 * k;
            if j >= samples {
                break;
            }
            let (a, m, b) = (g[i], g[i + k], g[j]);
            let scale = a.max(m).max(b).max(f64::MIN_POSITIVE);
            if m < 0.5 * (a + b) - FLOAT_TOL * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
    /// `lhs` and `rhs` agree to [`FLOAT_TOL`].
    pub equality: bool,
}

/// `Vol(K + L)^{1/n}` against `Vol(K)^{1/n} + Vol(L)^{1/n}`; volumes are
/// exact, only the roots are floating point.
pub fn bm_check(k: &Polytope, l: &Polytope) -> Result<BmCheck> {
    check_dim(k.dim(), l.dim())?;
    let root = 1.0 / k.dim() as f64;
    let sum = minkowski_sum(k, l)?;
    let lhs = rat::to_f64(sum.volume()).powf(root);
    let rhs = rat::to_f64(k.volume()).powf(root) + rat::to_f64(l.volume()).powf(root);
    Ok(BmCheck {
        lhs,
        rhs,
        ok: lhs >= rhs - FLOAT_TOL * rhs,
        equality: (lhs - rhs).abs() <= FLOAT_TOL * rhs,
    })
}

/// `∫₀¹ (r - 1/(n+1)) f(r)^{n-1} dr` where `f(r)^{n-1}` is the section
/// profile of the centered body at height `h(w) - r·width(w)`, divided by
/// the width. Nonnegative exactly when `h(-w) <= n h(w)`.
pub fn bridge_integral(k: &Polytope, w: &[Rat]) -> Result<Rat> {
    let k0 = k.centered();
    let s = k0.section_profile(w)?;
    let h = k0.support(w)?;
    let width = k0.width(w)?;
    let n1 = Rat::from_integer(BigInt::from(k.dim() + 1));
    // ((h - t) / W) - 1/(n+1)
    let g = Poly::linear(&h / &width - n1.recip(), -width.recip());
    Ok(s.integrate_against(&g) / &width)
}
