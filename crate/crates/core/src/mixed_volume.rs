//! Mixed volumes of two bodies and the difference-body ratio report.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{minkowski_sum, Polytope};
use crate::linalg::{self, Matrix};
use crate::rat::{self, binomial, Rat};

/// `V(K[1], T[n-1])` from the facet formula: `(1/n) Σ_F h_K(w_F) mu_F` over
/// the facets of `T`.
pub fn mv_first(k: &Polytope, t: &Polytope) -> Result<Rat> {
    check_dim(k.dim(), t.dim())?;
    let sum: Rat = t
        .facets()
        .iter()
        .map(|f| k.support_unchecked(&f.normal) * &f.measure)
        .sum();
    Ok(sum / Rat::from_integer(BigInt::from(t.dim())))
}

/// Coefficients of `Vol(K + tL) = Σ_j C(n, j) m_j t^j`, with
/// `m_j = V(K[n-j], L[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedVolumeProfile {
    pub n: usize,
    pub coeffs: Vec<Rat>,
}

impl MixedVolumeProfile {
    /// `V(K[n-j], L[j])`.
    pub fn mixed(&self, j: usize) -> &Rat {
        &self.coeffs[j]
    }

    /// `Vol(K + tL)`.
    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, m)| {
                Rat::from_integer(binomial(self.n as u64, j as u64)) * m * rat::pow(t, j as u32)
            })
            .sum()
    }
}

/// Interpolates `Vol(K + tL)` at `t = 1, ..., n+1` and solves the
/// Vandermonde system exactly.
pub fn mv_profile(k: &Polytope, l: &Polytope) -> Result<MixedVolumeProfile> {
    check_dim(k.dim(), l.dim())?;
    let n = k.dim();
    let mut vandermonde: Matrix = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for step in 1..=n + 1 {
        let t = Rat::from_integer(BigInt::from(step));
        let body = minkowski_sum(k, &l.scale(&t)?)?;
        values.push(body.volume().clone());
        vandermonde.push((0..=n).map(|j| rat::pow(&t, j as u32)).collect());
    }
    let c = linalg::solve(&vandermonde, &values)?;
    let coeffs = c
        .into_iter()
        .enumerate()
        .map(|(j, cj)| cj / Rat::from_integer(binomial(n as u64, j as u64)))
        .collect();
    Ok(MixedVolumeProfile { n, coeffs })
}

/// One `j` row of [`GodbersenReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GodbersenEntry {
    pub j: usize,
    /// `V(K[j], -K[n-j])`.
    pub mixed: Rat,
    pub binom: BigInt,
    /// `mixed / (C(n, j) Vol K)`; conjecturally at most 1.
    pub ratio: Rat,
    /// `n^min(j, n-j)`.
    pub bound_nmin: Rat,
    pub nmin_ok: bool,
    /// `λ^j (1-λ)^{n-j} mixed <= Vol K` on every grid value of λ.
    /// A grid can refute the bound but never certify it.
    pub artstein_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GodbersenReport {
    pub n: usize,
    pub volume: Rat,
    pub entries: Vec<GodbersenEntry>,
    pub is_simplex: bool,
}

impl GodbersenReport {
    pub fn entry(&self, j: usize) -> Option<&GodbersenEntry> {
        self.entries.iter().find(|e| e.j == j)
    }

    /// Whether `j` is one of the two indices where the ratio bound is a theorem.
    pub fn is_proven_index(&self, j: usize) -> bool {
        j == 1 || j + 1 == self.n
    }
}

/// Grid `1/10, ..., 9/10` plus `j/n`.
pub fn lambda_grid(j: usize, n: usize) -> Vec<Rat> {
    let mut grid: Vec<Rat> = (1..10).map(|i| rat::rat(i, 10)).collect();
    let special = rat::rat(j as i64, n as i64);
    if !grid.contains(&special) {
        grid.push(special);
    }
    grid
}

/// Ratios `V(K[j], -K[n-j]) / (C(n, j) V(K))` for `j = 1..n-1`, the
/// `n^min(j, n-j)` bound and the λ-weighted bound on a grid.
///
/// Fails with [`Error::TheoremViolation`] if the ratio exceeds 1 at
/// `j ∈ {1, n-1}`, or differs from 1 there when `K` is a simplex.
pub fn godbersen_report(k: &Polytope) -> Result<GodbersenReport> {
    let n = k.dim();
    let profile = mv_profile(k, &k.reflect())?;
    let volume = k.volume().clone();
    let is_simplex = k.is_simplex();
    let mut entries = Vec::new();
    for j in 1..n {
        // coeffs[i] = V(K[n-i], (-K)[i]); K appears j times at i = n - j.
        let mixed = profile.coeffs[n - j].clone();
        let binom = binomial(n as u64, j as u64);
        let ratio = &mixed / (Rat::from_integer(binom.clone()) * &volume);
        let bound_nmin = rat::pow(&Rat::from_integer(BigInt::from(n)), j.min(n - j) as u32);
        let nmin_ok = mixed <= &bound_nmin * &volume;
        let artstein_ok = lambda_grid(j, n).iter().all(|lam| {
            let one_minus = Rat::one() - lam;
            rat::pow(lam, j as u32) * rat::pow(&one_minus, (n - j) as u32) * &mixed <= volume
        });
        let proven = j == 1 || j + 1 == n;
        if proven && ratio > Rat::one() {
            return Err(Error::TheoremViolation(format!(
                "ratio {} > 1 at j = {j}",
                rat::fmt_rat(&ratio)
            )));
        }
        if proven && is_simplex && !ratio.is_one() {
            return Err(Error::TheoremViolation(format!(
                "simplex ratio {} != 1 at j = {j}",
                rat::fmt_rat(&ratio)
            )));
        }
        entries.push(GodbersenEntry {
            j,
            mixed,
            binom,
            ratio,
            bound_nmin,
            nmin_ok,
            artstein_ok,
        });
    }
    debug_assert!(entries.iter().all(|e| e.ratio > Rat::zero()));
    Ok(GodbersenReport {
        n,
        volume,
        entries,
        is_simplex,
    })
}
