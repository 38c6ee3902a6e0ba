//! Exact rational verification of mixed-volume inequalities for a convex
//! polytope and its reflection.
//!
//! Everything is computed over arbitrary-precision rationals: hulls,
//! volumes, centroids, support functions, facet measures, the mixed-volume
//! polynomial of `K + tL`, the halfspace system whose nonemptiness gives
//! `V(-K[1], K[n-1]) <= n V(K)`, the inclusion `-K ⊂ nK` for centered
//! bodies, and an integral inequality for concave functions on `[0, 1]`.

pub mod ak;
pub mod concave;
pub mod error;
pub mod geometry;
pub mod harness;
mod hull;
pub mod inclusion;
pub mod io;
pub mod linalg;
mod lp;
pub mod mixed_volume;
pub mod poly;
pub mod rat;

pub use error::{Error, Result};
pub use geometry::{includes, minkowski_sum, Facet, Polytope, SectionProfile};
pub use rat::{Point, Rat};
