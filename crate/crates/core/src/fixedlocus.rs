//! The 31 torus-fixed complete triangles and the weights of the tracked
//! bundles at each of them, computed from the fixed points' monomial ideals.
//!
//! A fixed point is a pair of monomial ideals, one on the primal plane and
//! one on the dual plane, each of total colength 3. Every weight below comes
//! from local staircases in the affine charts around the coordinate points.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Perm, PERMUTATIONS};
use crate::staircase::{hom_weights, section_weights, Chart, StairIdeal};
use crate::table::{
    PointWeights, WeightTable, BUNDLE_E, BUNDLE_H, BUNDLE_TANGENT, BUNDLE_TAUT, FIXED_POINT_COUNT,
};
use crate::triangles::{parse_xyz_monomial, verify_ct_membership, QuadricSpace, QUADRIC_MONOMIALS};
use crate::Plane;

/// Orbit representatives as (type, primal generators, dual generators).
/// Dual generators are written in `X, Y, Z` and read on the dual plane.
pub const REPRESENTATIVES: [(u8, &str, &str); 6] = [
    (1, "XY, YZ, XZ", "XY, XZ, YZ"),
    (2, "XY, XZ, Y^2", "XY, XZ, Z^2"),
    (3, "X, Y^2Z", "Y^2, YZ, Z^2"),
    (4, "X, Y^3", "Y^2, YZ, Z^2"),
    (5, "X^2, XY, Y^2", "Z, Y^3"),
    (6, "X^2, XY, Y^2", "Z, Y^2X"),
];

/// Twist of the rank-9 bundle: sections of `O(5)` modulo the modified square.
pub const E_TWIST: u32 = 5;

fn divides(g: [u32; 3], m: [u32; 3]) -> bool {
    (0..3).all(|i| g[i] <= m[i])
}

fn fmt_monomial(exp: [u32; 3], plane: Plane) -> String {
    let names = match plane {
        Plane::Primal => ["X", "Y", "Z"],
        Plane::Dual => ["Xv", "Yv", "Zv"],
    };
    let mut s = String::new();
    for (i, &e) in exp.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(names[i]),
            _ => s.push_str(&format!("{}^{e}", names[i])),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// A monomial ideal in the homogeneous coordinates of one plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousIdeal {
    plane: Plane,
    gens: Vec<[u32; 3]>,
}

impl HomogeneousIdeal {
    pub fn new(plane: Plane, gens: impl IntoIterator<Item = [u32; 3]>) -> Self {
        let mut all: Vec<[u32; 3]> = gens.into_iter().collect();
        all.sort_unstable();
        all.dedup();
        let gens = all
            .iter()
            .copied()
            .filter(|&m| !all.iter().any(|&g| g != m && divides(g, m)))
            .collect();
        Self { plane, gens }
    }

    /// Parses a comma-separated generator list such as `"XY, Y^2Z"`.
    pub fn parse(plane: Plane, text: &str) -> Result<Self> {
        let gens = text
            .split(',')
            .map(|t| parse_xyz_monomial(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(plane, gens))
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn generators(&self) -> &[[u32; 3]] {
        &self.gens
    }

    pub fn contains(&self, m: [u32; 3]) -> bool {
        self.gens.iter().any(|&g| divides(g, m))
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: Perm) -> Self {
        Self::new(
            self.plane,
            self.gens.iter().map(|g| {
                let mut out = [0; 3];
                for i in 0..3 {
                    out[perm[i]] = g[i];
                }
                out
            }),
        )
    }

    /// The ideal in the chart `{X_axis != 0}`, as a staircase in the chart's
    /// local coordinates.
    pub fn chart_piece(&self, axis: usize) -> StairIdeal {
        let chart = Chart::new(self.plane, axis);
        StairIdeal::new(self.gens.iter().map(|g| (g[chart.coords[0]], g[chart.coords[1]])))
    }

    /// The degree-2 part, which for these ideals is a net of conics.
    pub fn net(&self) -> Result<QuadricSpace> {
        let quadrics: Vec<[u32; 3]> =
            QUADRIC_MONOMIALS.iter().copied().filter(|&m| self.contains(m)).collect();
        QuadricSpace::from_monomials(self.plane, &quadrics)
    }
}

impl fmt::Display for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|&g| fmt_monomial(g, self.plane)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{self}", self.plane)
    }
}

/// The local ideal at one point of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub chart: Chart,
    pub ideal: StairIdeal,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub id: usize,
    pub orbit_type: u8,
    pub perm: Perm,
    pub primal: HomogeneousIdeal,
    pub dual: HomogeneousIdeal,
    pub primal_pieces: Vec<Piece>,
    pub dual_pieces: Vec<Piece>,
    /// Exponents of the cubic of dual lines: `X_k` to the multiplicity of
    /// the dual scheme at the dual point `e_k`, i.e. at the line `X_k = 0`.
    pub cubic: [u32; 3],
}

fn pieces(id: usize, ideal: &HomogeneousIdeal) -> Result<Vec<Piece>> {
    let mut out = Vec::new();
    for axis in 0..3 {
        let local = ideal.chart_piece(axis);
        if local.is_unit() {
            continue;
        }
        let multiplicity = local.colength().map_err(|e| Error::FixedPoint {
            point: id,
            reason: format!("{ideal} at chart {axis}: {e}"),
        })?;
        out.push(Piece { chart: Chart::new(ideal.plane(), axis), ideal: local, multiplicity });
    }
    let total: usize = out.iter().map(|p| p.multiplicity).sum();
    if total != 3 {
        return Err(Error::FixedPoint { point: id, reason: format!("{ideal} has length {total}, expected 3") });
    }
    Ok(out)
}

impl FixedPoint {
    pub fn new(id: usize, orbit_type: u8, perm: Perm, primal: HomogeneousIdeal, dual: HomogeneousIdeal) -> Result<Self> {
        let primal_pieces = pieces(id, &primal)?;
        let dual_pieces = pieces(id, &dual)?;
        let mut cubic = [0u32; 3];
        for p in &dual_pieces {
            cubic[p.chart.axis] += p.multiplicity as u32;
        }
        Ok(Self { id, orbit_type, perm, primal, dual, primal_pieces, dual_pieces, cubic })
    }

    /// Whether the primal scheme is the fat point `(u, v)^2`.
    pub fn is_fat(&self) -> bool {
        self.primal_pieces.iter().any(|p| p.ideal.is_fat())
    }

    /// Support of the primal scheme as (coordinate point, multiplicity).
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.primal_pieces.iter().map(|p| (p.chart.axis, p.multiplicity)).collect()
    }

    /// The cubic of dual lines in the local coordinates of `chart`.
    pub fn local_cubic(&self, chart: &Chart) -> StairIdeal {
        StairIdeal::new([(self.cubic[chart.coords[0]], self.cubic[chart.coords[1]])])
    }

    /// Checks that the primal and dual nets determine each other.
    pub fn is_complete_triangle(&self) -> Result<bool> {
        let net = self.primal.net()?;
        let dual_net = self.dual.net()?;
        Ok(verify_ct_membership(&net, &dual_net) && verify_ct_membership(&dual_net, &net))
    }

    fn check_count(&self, bundle: &str, weights: Vec<LinearForm>, expected: usize) -> Result<Vec<LinearForm>> {
        if weights.len() != expected {
            return Err(Error::WeightCount {
                point: self.id,
                bundle: bundle.into(),
                found: weights.len(),
                expected,
            });
        }
        Ok(weights)
    }

    /// Weights of `H^0(O(5) / (I^2 + gamma))`.
    pub fn e_weights(&self) -> Result<Vec<LinearForm>> {
        let mut out = Vec::new();
        for p in &self.primal_pieces {
            let modified = p.ideal.modified_square(&self.local_cubic(&p.chart))?;
            out.extend(section_weights(&modified, &p.chart, E_TWIST)?);
        }
        self.check_count(BUNDLE_E, out, 9)
    }

    /// Tangent weights. At a fat primal point the dual scheme is curvilinear
    /// and its deformations are used instead.
    pub fn tangent_weights(&self) -> Result<Vec<LinearForm>> {
        let pieces = if self.is_fat() { &self.dual_pieces } else { &self.primal_pieces };
        let mut out = Vec::new();
        for p in pieces {
            out.extend(hom_weights(&p.ideal, &p.chart)?);
        }
        self.check_count(BUNDLE_TANGENT, out, 6)
    }

    /// Weights of `H^0(O(d) / I)`.
    pub fn taut_weights(&self, d: u32) -> Result<Vec<LinearForm>> {
        let mut out = Vec::new();
        for p in &self.primal_pieces {
            out.extend(section_weights(&p.ideal, &p.chart, d)?);
        }
        self.check_count(&format!("taut{d}"), out, 3)
    }

    /// Weight of the hyperplane class, computed as the determinant of
    /// `taut1 - taut0` and checked against the weighted support.
    pub fn h_weight(&self) -> Result<LinearForm> {
        let det: LinearForm =
            self.taut_weights(1)?.into_iter().sum::<LinearForm>() - self.taut_weights(0)?.into_iter().sum();
        let support: LinearForm =
            self.primal_pieces.iter().map(|p| p.chart.axis_weight.scale(p.multiplicity as i64)).sum();
        if det != support {
            return Err(Error::HWeightDisagreement {
                point: self.id,
                det: det.to_string(),
                support: support.to_string(),
            });
        }
        Ok(det)
    }

    pub fn weights(&self) -> Result<PointWeights> {
        let mut weights = BTreeMap::new();
        weights.insert(BUNDLE_E.to_string(), self.e_weights()?);
        weights.insert(BUNDLE_TANGENT.to_string(), self.tangent_weights()?);
        for (d, name) in BUNDLE_TAUT.iter().enumerate() {
            weights.insert(name.to_string(), self.taut_weights(d as u32)?);
        }
        weights.insert(BUNDLE_H.to_string(), vec![self.h_weight()?]);
        Ok(PointWeights { id: self.id, orbit_type: self.orbit_type, perm: self.perm, weights })
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{:<2} type {} perm {:?}  {} ; {}",
            self.id, self.orbit_type, self.perm, self.primal, self.dual
        )
    }
}

/// All fixed points: each representative under the six permutations of the
/// coordinates, with repeats removed, in representative-then-permutation order.
pub fn enumerate_fixed_points() -> Result<Vec<FixedPoint>> {
    let mut points: Vec<FixedPoint> = Vec::new();
    for (orbit_type, primal, dual) in REPRESENTATIVES {
        let primal = HomogeneousIdeal::parse(Plane::Primal, primal)?;
        let dual = HomogeneousIdeal::parse(Plane::Dual, dual)?;
        for perm in PERMUTATIONS {
            let (p, d) = (primal.permute(perm), dual.permute(perm));
            if points.iter().any(|q| q.primal == p && q.dual == d) {
                continue;
            }
            points.push(FixedPoint::new(points.len(), orbit_type, perm, p, d)?);
        }
    }
    if points.len() != FIXED_POINT_COUNT {
        return Err(Error::Table(format!("{} fixed points, expected {FIXED_POINT_COUNT}", points.len())));
    }
    Ok(points)
}

/// The weight table computed from the ideals at every fixed point.
pub fn derived_weight_table() -> Result<WeightTable> {
    let points = enumerate_fixed_points()?
        .iter()
        .map(FixedPoint::weights)
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightTable { points })
}
