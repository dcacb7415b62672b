//! Per-fixed-point torus weight tables, their JSON form, and multiset
//! comparison between two tables.
//!
//! JSON layout: an array with one record per fixed point,
//! `{"id", "orbit_type", "perm", "weights": {"E": [[x, y, z], ...], ...}}`,
//! each weight written as its coefficients on `a, b, c`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Perm};

pub const BUNDLE_E: &str = "E";
pub const BUNDLE_TANGENT: &str = "T";
pub const BUNDLE_H: &str = "H";
pub const BUNDLE_TAUT: [&str; 4] = ["taut0", "taut1", "taut2", "taut3"];

/// The seven bundles tracked on the space of complete triangles, with ranks.
pub const STANDARD_BUNDLES: [(&str, usize); 7] = [
    (BUNDLE_E, 9),
    (BUNDLE_TANGENT, 6),
    ("taut0", 3),
    ("taut1", 3),
    ("taut2", 3),
    ("taut3", 3),
    (BUNDLE_H, 1),
];

pub const FIXED_POINT_COUNT: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointWeights {
    pub id: usize,
    pub orbit_type: u8,
    pub perm: Perm,
    pub weights: BTreeMap<String, Vec<LinearForm>>,
}

impl PointWeights {
    pub fn bundle(&self, name: &str) -> Result<&[LinearForm]> {
        self.weights
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownBundle(format!("{name} (fixed point {})", self.id)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightTable {
    pub points: Vec<PointWeights>,
}

impl WeightTable {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, orbit_type: u8, perm: Perm) -> Option<&PointWeights> {
        self.points.iter().find(|p| p.orbit_type == orbit_type && p.perm == perm)
    }

    /// Dimension of the ambient space: the common number of tangent weights.
    pub fn dimension(&self) -> Result<usize> {
        let first = self
            .points
            .first()
            .ok_or_else(|| Error::Table("no fixed points".into()))?;
        Ok(first.bundle(BUNDLE_TANGENT)?.len())
    }

    /// Structural checks for any table: nonempty, unique ids, a tangent
    /// bundle of constant rank everywhere, and every bundle of constant rank.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dimension()?;
        let mut ids = BTreeSet::new();
        let ranks: BTreeMap<&String, usize> =
            self.points[0].weights.iter().map(|(k, v)| (k, v.len())).collect();
        for p in &self.points {
            if !ids.insert(p.id) {
                return Err(Error::Table(format!("duplicate fixed point id {}", p.id)));
            }
            if p.bundle(BUNDLE_TANGENT)?.len() != dim {
                return Err(Error::WeightCount {
                    point: p.id,
                    bundle: BUNDLE_TANGENT.into(),
                    found: p.bundle(BUNDLE_TANGENT)?.len(),
                    expected: dim,
                });
            }
            for (name, &rank) in &ranks {
                let found = p.bundle(name)?.len();
                if found != rank {
                    return Err(Error::WeightCount { point: p.id, bundle: (*name).clone(), found, expected: rank });
                }
            }
        }
        Ok(())
    }

    /// Checks specific to the space of complete triangles: 31 points and the
    /// seven standard bundles with their ranks.
    pub fn validate_standard(&self) -> Result<()> {
        self.validate()?;
        if self.points.len() != FIXED_POINT_COUNT {
            return Err(Error::Table(format!(
                "{} fixed points, expected {FIXED_POINT_COUNT}",
                self.points.len()
            )));
        }
        for p in &self.points {
            for (name, rank) in STANDARD_BUNDLES {
                let found = p.bundle(name)?.len();
                if found != rank {
                    return Err(Error::WeightCount { point: p.id, bundle: name.into(), found, expected: rank });
                }
            }
        }
        Ok(())
    }

    /// One compact record per line, so dumps diff cleanly.
    pub fn to_json(&self) -> Result<String> {
        let mut out = String::from("[\n");
        for (i, p) in self.points.iter().enumerate() {
            out.push_str("  ");
            out.push_str(&serde_json::to_string(p)?);
            if i + 1 < self.points.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: WeightTable = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }
}

pub fn same_multiset(x: &[LinearForm], y: &[LinearForm]) -> bool {
    let mut x = x.to_vec();
    let mut y = y.to_vec();
    x.sort();
    y.sort();
    x == y
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub point: usize,
    pub orbit_type: u8,
    pub perm: Perm,
    pub bundle: String,
    pub derived: Vec<LinearForm>,
    pub reference: Vec<LinearForm>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the seven standard bundles point by point, matching points by
/// `(orbit_type, perm)`. A point missing from `reference` counts as a
/// mismatch in every bundle.
pub fn cross_check(derived: &WeightTable, reference: &WeightTable) -> CrossCheckReport {
    let mut report = CrossCheckReport::default();
    for p in &derived.points {
        let other = reference.find(p.orbit_type, p.perm);
        for (name, _) in STANDARD_BUNDLES {
            report.comparisons += 1;
            let mine = p.weights.get(name).cloned().unwrap_or_default();
            let theirs = other.and_then(|o| o.weights.get(name)).cloned().unwrap_or_default();
            if other.is_none() || !same_multiset(&mine, &theirs) {
                report.mismatches.push(Mismatch {
                    point: p.id,
                    orbit_type: p.orbit_type,
                    perm: p.perm,
                    bundle: name.to_string(),
                    derived: mine,
                    reference: theirs,
                });
            }
        }
    }
    report
}
