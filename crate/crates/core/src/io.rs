//! JSON file formats. Rationals are strings `"p/q"` or `"k"`; writers emit
//! lowest terms, readers accept any equivalent fraction.

use serde::{Deserialize, Serialize};

use crate::ak::{HalfSpace, System};
use crate::concave::PLConcave;
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::inclusion::TightnessProfile;
use crate::mixed_volume::GodbersenReport;
use crate::rat::{fmt_point, fmt_rat, parse_point, parse_rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeFile {
    pub fn from_polytope(k: &Polytope) -> Self {
        Self {
            dim: k.dim(),
            vertices: k.vertices().iter().map(|v| fmt_point(v)).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        got: v.len(),
                    });
                }
                parse_point(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_points(&pts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRow {
    pub w: Vec<String>,
    pub beta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub dim: usize,
    pub rows: Vec<SystemRow>,
}

impl SystemFile {
    pub fn from_system(s: &System) -> Self {
        Self {
            dim: s.dim,
            rows: s
                .halfspaces
                .iter()
                .map(|h| SystemRow {
                    w: fmt_point(&h.normal),
                    beta: fmt_rat(&h.rhs),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<System> {
        let hs = self
            .rows
            .iter()
            .map(|r| {
                Ok(HalfSpace {
                    normal: parse_point(&r.w)?,
                    rhs: parse_rat(&r.beta)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        System::new(self.dim, hs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntryJson {
    pub j: usize,
    pub mixed: String,
    pub ratio: String,
    pub nmin_ok: bool,
    pub artstein_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub volume: String,
    pub entries: Vec<ReportEntryJson>,
    pub is_simplex: bool,
}

impl ReportJson {
    /// Serializes `r`, optionally keeping only index `j`.
    pub fn from_report(r: &GodbersenReport, only_j: Option<usize>) -> Self {
        Self {
            n: r.n,
            volume: fmt_rat(&r.volume),
            entries: r
                .entries
                .iter()
                .filter(|e| only_j.is_none_or(|j| e.j == j))
                .map(|e| ReportEntryJson {
                    j: e.j,
                    mixed: fmt_rat(&e.mixed),
                    ratio: fmt_rat(&e.ratio),
                    nmin_ok: e.nmin_ok,
                    artstein_ok: e.artstein_ok,
                })
                .collect(),
            is_simplex: r.is_simplex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessRowJson {
    pub w: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub tight: bool,
}

pub fn tightness_rows(t: &TightnessProfile) -> Vec<TightnessRowJson> {
    t.entries
        .iter()
        .map(|e| TightnessRowJson {
            w: fmt_point(&e.normal),
            lhs: fmt_rat(&e.lhs),
            rhs: fmt_rat(&e.rhs),
            tight: e.tight,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLConcaveFile {
    pub knots: Vec<String>,
    pub values: Vec<String>,
}

impl PLConcaveFile {
    pub fn from_function(f: &PLConcave) -> Self {
        Self {
            knots: fmt_point(f.knots()),
            values: fmt_point(f.values()),
        }
    }

    pub fn to_function(&self) -> Result<PLConcave> {
        PLConcave::new(parse_point(&self.knots)?, parse_point(&self.values)?)
    }
}

pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
