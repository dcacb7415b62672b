//! Monomial ideals in two local coordinates `(u, v)`: staircases, colengths,
//! squaring, the modified square across fat points, and torus weights of
//! quotient bases and of `Hom(I, O/I)` for complete intersections.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::LinearForm;
use crate::Plane;

/// Exponent pair `(i, j)` standing for `u^i v^j`.
pub type Mono = (u32, u32);

fn divides(g: Mono, m: Mono) -> bool {
    g.0 <= m.0 && g.1 <= m.1
}

/// A monomial ideal in `k[u, v]`, stored by its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StairIdeal {
    gens: Vec<Mono>,
}

impl StairIdeal {
    /// Builds the ideal generated by `gens`, dropping redundant generators.
    pub fn new(gens: impl IntoIterator<Item = Mono>) -> Self {
        let mut all: Vec<Mono> = gens.into_iter().collect();
        // Pure u-powers first, pure v-powers last.
        all.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        all.dedup();
        let minimal = all
            .iter()
            .copied()
            .filter(|&m| !all.iter().any(|&g| g != m && divides(g, m)))
            .collect();
        Self { gens: minimal }
    }

    /// `(u, v)^n`.
    pub fn maximal_power(n: u32) -> Self {
        Self::new((0..=n).map(|i| (i, n - i)))
    }

    pub fn generators(&self) -> &[Mono] {
        &self.gens
    }

    pub fn contains(&self, m: Mono) -> bool {
        self.gens.iter().any(|&g| divides(g, m))
    }

    pub fn is_unit(&self) -> bool {
        self.contains((0, 0))
    }

    /// The fat ideal `(u, v)^2`.
    pub fn is_fat(&self) -> bool {
        *self == Self::maximal_power(2)
    }

    /// Staircase bounds `(pure u-power, pure v-power)`, if both exist.
    fn bounds(&self) -> Result<(u32, u32)> {
        let u = self.gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min();
        let v = self.gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min();
        match (u, v) {
            (Some(u), Some(v)) => Ok((u, v)),
            _ => Err(Error::NotCofinite(self.to_string())),
        }
    }

    /// Monomials outside the ideal, ordered by `v`-exponent then `u`-exponent.
    pub fn quotient_basis(&self) -> Result<Vec<Mono>> {
        let (max_u, max_v) = self.bounds()?;
        let mut cells = Vec::new();
        for j in 0..max_v {
            for i in 0..max_u {
                if !self.contains((i, j)) {
                    cells.push((i, j));
                }
            }
        }
        Ok(cells)
    }

    pub fn colength(&self) -> Result<usize> {
        Ok(self.quotient_basis()?.len())
    }

    pub fn square(&self) -> Self {
        self.product(self)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(
            self.gens
                .iter()
                .flat_map(|g| other.gens.iter().map(move |h| (g.0 + h.0, g.1 + h.1))),
        )
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::new(self.gens.iter().chain(other.gens.iter()).copied())
    }

    /// `I^2 + (gamma)` for a principal `gamma`: the square, corrected at fat
    /// points by the cubic of dual lines so that the colength stays 9.
    pub fn modified_square(&self, gamma: &Self) -> Result<Self> {
        if gamma.gens.len() != 1 {
            return Err(Error::NotPrincipal(gamma.to_string()));
        }
        Ok(self.square().sum(gamma))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|&g| self.contains(g))
    }
}

impl fmt::Display for StairIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|&(i, j)| {
                let pow = |name: &str, e: u32| match e {
                    0 => String::new(),
                    1 => name.to_string(),
                    _ => format!("{name}^{e}"),
                };
                match (i, j) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => pow("u", i),
                    (0, _) => pow("v", j),
                    _ => format!("{}*{}", pow("u", i), pow("v", j)),
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for StairIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StairIdeal{self}")
    }
}

/// An affine chart `{X_k != 0}` of the primal or dual plane around the
/// coordinate point `e_k`, with the torus weights of its two coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub plane: Plane,
    /// Index of the nonvanishing homogeneous coordinate.
    pub axis: usize,
    /// Homogeneous coordinate indices behind the local coordinates `(u, v)`.
    pub coords: [usize; 2],
    pub coord_weights: [LinearForm; 2],
    /// Weight of the nonvanishing coordinate itself.
    pub axis_weight: LinearForm,
}

impl Chart {
    /// Chart around `e_axis`. Primal coordinates `X_j / X_axis` carry weight
    /// `a_j - a_axis`; dual coordinates carry `a_axis - a_j`.
    pub fn new(plane: Plane, axis: usize) -> Self {
        assert!(axis < 3, "chart axis out of range");
        let coords = match axis {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let sign = match plane {
            Plane::Primal => 1,
            Plane::Dual => -1,
        };
        let weight = |k: usize| LinearForm::basis(k).scale(sign);
        let axis_weight = weight(axis);
        let coord_weights = coords.map(|j| &weight(j) - &axis_weight);
        Self { plane, axis, coords, coord_weights, axis_weight }
    }

    pub fn monomial_weight(&self, m: Mono) -> LinearForm {
        &self.coord_weights[0].scale(m.0.into()) + &self.coord_weights[1].scale(m.1.into())
    }

    /// Weight of the `d`-th power of the nonvanishing coordinate.
    pub fn trivialization_weight(&self, d: u32) -> LinearForm {
        self.axis_weight.scale(d.into())
    }
}

/// Weights of `Hom(I, O/I)` for a two-generator monomial complete
/// intersection: `wt(m) - wt(g)` over basis monomials `m` and generators `g`.
pub fn hom_weights(ideal: &StairIdeal, chart: &Chart) -> Result<Vec<LinearForm>> {
    if ideal.generators().len() != 2 {
        return Err(Error::NotCompleteIntersection {
            ideal: ideal.to_string(),
            count: ideal.generators().len(),
        });
    }
    let basis = ideal.quotient_basis()?;
    Ok(ideal
        .generators()
        .iter()
        .flat_map(|&g| {
            let wg = chart.monomial_weight(g);
            basis.iter().map(move |&m| &chart.monomial_weight(m) - &wg)
        })
        .collect())
}

/// Weights of the sections `X_axis^d * m` for `m` in the quotient basis.
pub fn section_weights(ideal: &StairIdeal, chart: &Chart, d: u32) -> Result<Vec<LinearForm>> {
    if d > 5 {
        return Err(Error::TwistDegree(d));
    }
    let twist = chart.trivialization_weight(d);
    Ok(ideal
        .quotient_basis()?
        .into_iter()
        .map(|m| &twist + &chart.monomial_weight(m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(s: &str) -> LinearForm {
        s.parse().unwrap()
    }

    fn forms(list: &[&str]) -> Vec<LinearForm> {
        list.iter().map(|s| lf(s)).collect()
    }

    fn sorted(mut v: Vec<LinearForm>) -> Vec<LinearForm> {
        v.sort();
        v
    }

    /// Brute-force staircase: scan a generous box and count cells no
    /// generator divides.
    fn brute_cells(gens: &[Mono]) -> Vec<Mono> {
        let mut cells = Vec::new();
        for j in 0..20 {
            for i in 0..20 {
                if !gens.iter().any(|&g| divides(g, (i, j))) {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    #[test]
    fn colength_examples() {
        let m = StairIdeal::new([(1, 0), (0, 1)]);
        assert_eq!(m.square().colength().unwrap(), 3);
        let curv = StairIdeal::new([(1, 0), (0, 2)]);
        assert_eq!(curv.square(), StairIdeal::new([(2, 0), (1, 2), (0, 4)]));
        assert_eq!(curv.square().colength().unwrap(), 6);
        let lemma = StairIdeal::maximal_power(4).sum(&StairIdeal::new([(3, 0)]));
        assert_eq!(lemma.colength().unwrap(), 9);
    }

    #[test]
    fn not_cofinite_is_rejected() {
        let line = StairIdeal::new([(1, 0)]);
        assert!(matches!(line.colength(), Err(Error::NotCofinite(_))));
        assert!(line.quotient_basis().is_err());
    }

    #[test]
    fn quotient_basis_examples() {
        assert_eq!(StairIdeal::new([(1, 0), (0, 1)]).quotient_basis().unwrap(), vec![(0, 0)]);
        assert_eq!(
            StairIdeal::new([(2, 0), (1, 2), (0, 4)]).quotient_basis().unwrap(),
            vec![(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (0, 3)]
        );
        let lemma = StairIdeal::maximal_power(4).sum(&StairIdeal::new([(3, 0)]));
        let expected = brute_cells(lemma.generators());
        assert_eq!(
            expected,
            vec![(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (0, 3)]
        );
        assert_eq!(lemma.quotient_basis().unwrap(), expected);
    }

    #[test]
    fn square_and_sum_examples() {
        assert_eq!(
            StairIdeal::new([(1, 0), (0, 1)]).square().generators(),
            &[(2, 0), (1, 1), (0, 2)]
        );
        assert_eq!(
            StairIdeal::new([(1, 0), (0, 3)]).square(),
            StairIdeal::new([(2, 0), (1, 3), (0, 6)])
        );
        let sum = StairIdeal::maximal_power(4).sum(&StairIdeal::new([(3, 0)]));
        let mut gens = sum.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![(0, 4), (1, 3), (2, 2), (3, 0)]);
    }

    #[test]
    fn modified_square_examples() {
        let fat = StairIdeal::maximal_power(2);
        assert!(fat.is_fat());
        assert_eq!(fat.square().colength().unwrap(), 10);

        let five = fat.modified_square(&StairIdeal::new([(3, 0)])).unwrap();
        assert_eq!(five, StairIdeal::maximal_power(4).sum(&StairIdeal::new([(3, 0)])));
        assert_eq!(five.colength().unwrap(), 9);

        let six = fat.modified_square(&StairIdeal::new([(2, 1)])).unwrap();
        assert_eq!(six.colength().unwrap(), 9);
        assert_eq!(
            six.quotient_basis().unwrap(),
            vec![(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)]
        );

        let curv = StairIdeal::new([(1, 0), (0, 2)]);
        let gamma = StairIdeal::new([(1, 2)]);
        assert_eq!(curv.modified_square(&gamma).unwrap(), curv.square());
        assert_eq!(curv.modified_square(&gamma).unwrap().colength().unwrap(), 6);

        assert!(matches!(
            fat.modified_square(&StairIdeal::new([(3, 0), (0, 3)])),
            Err(Error::NotPrincipal(_))
        ));
    }

    #[test]
    fn hom_weight_examples() {
        let at_x = Chart::new(Plane::Primal, 0);
        assert_eq!(at_x.coord_weights, [lf("b-a"), lf("c-a")]);
        let reduced = StairIdeal::new([(1, 0), (0, 1)]);
        assert_eq!(hom_weights(&reduced, &at_x).unwrap(), forms(&["a-b", "a-c"]));

        let at_z = Chart::new(Plane::Primal, 2);
        assert_eq!(at_z.coord_weights, [lf("a-c"), lf("b-c")]);
        let curv = StairIdeal::new([(1, 0), (0, 2)]);
        assert_eq!(
            hom_weights(&curv, &at_z).unwrap(),
            forms(&["c-a", "b-a", "2*c-2*b", "c-b"])
        );

        let triple = StairIdeal::new([(1, 0), (0, 3)]);
        assert_eq!(
            sorted(hom_weights(&triple, &at_z).unwrap()),
            sorted(forms(&["c-a", "b-a", "2*b-a-c", "3*c-3*b", "2*c-2*b", "c-b"]))
        );
    }

    #[test]
    fn hom_weights_reject_non_ci() {
        let chart = Chart::new(Plane::Primal, 2);
        assert!(matches!(
            hom_weights(&StairIdeal::maximal_power(2), &chart),
            Err(Error::NotCompleteIntersection { count: 3, .. })
        ));
    }

    #[test]
    fn section_weight_examples() {
        let at_x = Chart::new(Plane::Primal, 0);
        let reduced = StairIdeal::new([(1, 0), (0, 1)]);
        assert_eq!(section_weights(&reduced, &at_x, 5).unwrap(), forms(&["5*a"]));

        let at_z = Chart::new(Plane::Primal, 2);
        let sq = StairIdeal::new([(2, 0), (1, 2), (0, 4)]);
        assert_eq!(
            sorted(section_weights(&sq, &at_z, 5).unwrap()),
            sorted(forms(&["5*c", "4*c+a", "4*c+b", "3*c+a+b", "3*c+2*b", "2*c+3*b"]))
        );

        let w0 = section_weights(&sq, &at_z, 0).unwrap();
        let raw: Vec<_> = sq.quotient_basis().unwrap().into_iter().map(|m| at_z.monomial_weight(m)).collect();
        assert_eq!(w0, raw);

        assert!(matches!(section_weights(&sq, &at_z, 6), Err(Error::TwistDegree(6))));
    }

    #[test]
    fn dual_chart_weights() {
        let chart = Chart::new(Plane::Dual, 0);
        assert_eq!(chart.coord_weights, [lf("a-b"), lf("a-c")]);
        assert_eq!(chart.axis_weight, lf("-a"));
    }

    #[test]
    fn colength_arithmetic_under_squaring() {
        // Reduced point and curvilinear pieces of colength 1, 2, 3.
        for gens in [vec![(1, 0), (0, 1)], vec![(1, 0), (0, 2)], vec![(1, 0), (0, 3)], vec![(2, 0), (0, 1)]] {
            let ideal = StairIdeal::new(gens);
            assert_eq!(ideal.square().colength().unwrap(), 3 * ideal.colength().unwrap());
        }
        let fat = StairIdeal::maximal_power(2);
        let excess = fat.square().colength().unwrap() - 3 * fat.colength().unwrap();
        assert_eq!(excess, 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cofinite_ideal() -> impl Strategy<Value = StairIdeal> {
            (1u32..6, 1u32..6, prop::collection::vec((0u32..6, 0u32..6), 0..5))
                .prop_map(|(pu, pv, rest)| StairIdeal::new([(pu, 0), (0, pv)].into_iter().chain(rest)))
        }

        proptest! {
            #[test]
            fn basis_matches_brute_force(ideal in cofinite_ideal()) {
                let basis = ideal.quotient_basis().unwrap();
                prop_assert_eq!(basis.len(), ideal.colength().unwrap());
                for &m in &basis {
                    prop_assert!(!ideal.contains(m));
                }
                let mut brute = brute_cells(ideal.generators());
                brute.sort_by_key(|&(i, j)| (j, i));
                prop_assert_eq!(basis, brute);
            }

            #[test]
            fn generators_are_minimal(ideal in cofinite_ideal()) {
                let gens = ideal.generators();
                for &g in gens {
                    for &h in gens {
                        prop_assert!(g == h || !divides(g, h));
                    }
                }
            }

            #[test]
            fn modified_square_contains_square(ideal in cofinite_ideal(), g in (0u32..5, 0u32..5)) {
                let gamma = StairIdeal::new([g]);
                let modified = ideal.modified_square(&gamma).unwrap();
                prop_assert!(modified.contains_ideal(&ideal.square()));
            }

            #[test]
            fn hom_weight_count(pu in 1u32..6, pv in 1u32..6, axis in 0usize..3) {
                let ideal = StairIdeal::new([(pu, 0), (0, pv)]);
                let chart = Chart::new(Plane::Primal, axis);
                let w = hom_weights(&ideal, &chart).unwrap();
                prop_assert_eq!(w.len(), 2 * ideal.colength().unwrap());
            }
        }
    }
}
