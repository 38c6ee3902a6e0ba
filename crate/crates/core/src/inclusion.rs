//! Inclusion `-K ⊂ nK` for bodies centered at their centroid, per-facet
//! tightness, and the directional first moment of the section profile.
//!
//! Sign convention: profiles are parametrized by `t = x · w` increasing
//! along `+w`. Parametrizing along `-w` instead maps `t -> -t` and flips the
//! sign of the first moment, so "moment is zero" is the same statement in
//! both conventions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{includes, Polytope};
use crate::rat::{self, Point, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessEntry {
    pub normal: Point,
    /// `h_{-K0}(w)`.
    pub lhs: Rat,
    /// `n h_{K0}(w)`.
    pub rhs: Rat,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessProfile {
    pub entries: Vec<TightnessEntry>,
}

impl TightnessProfile {
    pub fn tight_count(&self) -> usize {
        self.entries.iter().filter(|e| e.tight).count()
    }

    pub fn all_tight(&self) -> bool {
        self.entries.iter().all(|e| e.tight)
    }

    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.lhs <= e.rhs)
    }
}

/// `-K0 ⊂ n K0` with `K0 = K - centroid(K)`. A `false` result is a bug and is
/// reported as [`Error::TheoremViolation`].
pub fn inclusion_in_nk(k: &Polytope) -> Result<bool> {
    let k0 = k.centered();
    let n = Rat::from_integer(BigInt::from(k.dim()));
    let outer = k0.scale(&n)?;
    if includes(&outer, &k0.reflect())? {
        Ok(true)
    } else {
        Err(Error::TheoremViolation("-K0 not contained in n K0".into()))
    }
}

/// `h_{-K0}(w)` against `n h_{K0}(w)` at each facet normal of `K`.
pub fn tightness_profile(k: &Polytope) -> TightnessProfile {
    let k0 = k.centered();
    let n = Rat::from_integer(BigInt::from(k.dim()));
    let entries = k0
        .facets()
        .iter()
        .map(|f| {
            let lhs = k0.support_unchecked(&rat::neg(&f.normal));
            let rhs = &n * k0.support_unchecked(&f.normal);
            TightnessEntry {
                normal: f.normal.clone(),
                tight: lhs == rhs,
                lhs,
                rhs,
            }
        })
        .collect();
    TightnessProfile { entries }
}

/// `∫ t s(t) dt` for the section profile of the centered body along `w`.
/// Zero for every direction, since the centroid of `K0` is the origin.
pub fn directional_moment(k: &Polytope, w: &[Rat]) -> Result<Rat> {
    Ok(k.centered().section_profile(w)?.first_moment())
}

/// `∫ t s(t) dt` for `K` as given, without centering. Equals
/// `Vol(K) * (centroid · w)`.
pub fn raw_moment(k: &Polytope, w: &[Rat]) -> Result<Rat> {
    Ok(k.section_profile(w)?.first_moment())
}

/// `h(w) + h(-w)`.
pub fn width(k: &Polytope, w: &[Rat]) -> Result<Rat> {
    k.width(w)
}

/// Cone volumes `(1/n) h_{K0}(w_F) mu_F` over the centered body's facets.
/// For a simplex each one equals `Vol(K) / (n + 1)`.
pub fn cone_volumes(k: &Polytope) -> Vec<Rat> {
    let k0 = k.centered();
    let n = Rat::from_integer(BigInt::from(k.dim()));
    k0.facets()
        .iter()
        .map(|f| k0.support_unchecked(&f.normal) * &f.measure / &n)
        .collect()
}

/// Whether every facet-normal moment of the centered body vanishes.
pub fn facet_moments_vanish(k: &Polytope) -> Result<bool> {
    let k0 = k.centered();
    for f in k0.facets() {
        if !k0.section_profile(&f.normal)?.first_moment().is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn pt(c: &[i64]) -> Point {
        c.iter().map(|&x| int(x)).collect()
    }

    fn triangle() -> Polytope {
        Polytope::from_points(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap()
    }

    fn square() -> Polytope {
        Polytope::from_points(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]).unwrap()
    }

    #[test]
    fn triangle_is_tight_everywhere() {
        assert_eq!(inclusion_in_nk(&triangle()), Ok(true));
        let t = tightness_profile(&triangle());
        assert_eq!(t.entries.len(), 3);
        assert!(t.all_tight());
        assert_eq!(t.entries[0].lhs, rat(2, 3));
    }

    #[test]
    fn square_is_never_tight() {
        assert_eq!(inclusion_in_nk(&square()), Ok(true));
        let t = tightness_profile(&square());
        assert_eq!(t.entries.len(), 4);
        assert_eq!(t.tight_count(), 0);
        assert!(t.entries.iter().all(|e| e.rhs == &e.lhs * int(2)));
    }

    #[test]
    fn moments() {
        assert_eq!(directional_moment(&square(), &pt(&[1, 0])), Ok(int(0)));
        assert_eq!(directional_moment(&triangle(), &pt(&[1, 1])), Ok(int(0)));
        // Uncentered: ∫₀¹ t (1 - t) dt.
        assert_eq!(raw_moment(&triangle(), &pt(&[1, 0])), Ok(rat(1, 6)));
        assert_eq!(
            directional_moment(&triangle(), &pt(&[0, 0])),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn widths() {
        assert_eq!(width(&square(), &pt(&[1, 0])), Ok(int(1)));
        assert_eq!(width(&square(), &pt(&[1, 1])), Ok(int(2)));
        assert_eq!(width(&triangle(), &pt(&[1, 1])), Ok(int(1)));
    }

    #[test]
    fn simplex_cone_volumes_are_equal() {
        let c = cone_volumes(&triangle());
        assert_eq!(c, vec![rat(1, 6); 3]);
    }
}
