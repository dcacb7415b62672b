//! Reference weight table, transcribed entry by entry for the six orbit
//! representatives (1)-(6) and expanded over the permutations of `a, b, c`.
//! Kept independent of the derivation in [`crate::fixedlocus`] so the two
//! can be checked against each other.

use std::collections::BTreeMap;

use crate::poly::{LinearForm, PERMUTATIONS};
use crate::table::{PointWeights, WeightTable, BUNDLE_E, BUNDLE_H, BUNDLE_TANGENT, BUNDLE_TAUT};

const E: [&str; 6] = [
    "5*a, 5*b, 5*c, 4*a+b, 4*a+c, 4*b+c, 4*b+a, 4*c+a, 4*c+b",
    "5*a, 4*a+b, 4*a+c, 5*c, 4*c+a, 4*c+b, 3*c+a+b, 3*c+2*b, 2*c+3*b",
    "5*b, 4*b+a, 4*b+c, 5*c, 4*c+a, 4*c+b, 3*c+a+b, 3*c+2*b, 2*c+3*b",
    "5*c, 4*c+b, 3*c+2*b, 2*c+3*b, c+4*b, 5*b, 4*c+a, 3*c+a+b, 2*c+a+2*b",
    "5*c, 4*c+a, 3*c+2*a, 4*c+b, 3*c+a+b, 2*c+2*a+b, 3*c+2*b, 2*c+2*b+a, 2*c+3*b",
    "5*c, 4*c+a, 3*c+2*a, 2*c+3*a, 4*c+b, 3*c+a+b, 3*c+2*b, 2*c+2*b+a, 2*c+3*b",
];

const TANGENT: [&str; 6] = [
    "c-a, c-b, b-c, b-a, a-b, a-c",
    "a-c, a-b, c-a, 2*c-2*b, b-a, c-b",
    "c-a, 2*c-2*b, b-a, c-b, b-c, b-a",
    "c-a, 3*c-3*b, b-a, 2*c-2*b, 2*b-c-a, c-b",
    "3*b-3*a, 2*b-2*a, b-a, c-a, c-b, a-2*b+c",
    "a-b, c-b, c-a, 2*b-2*a, c-b, b-a",
];

const TAUT: [[&str; 6]; 4] = [
    [
        "0, 0, 0",
        "0, b-c, 0",
        "0, b-c, 0",
        "0, b-c, 2*b-2*c",
        "0, a-c, b-c",
        "0, a-c, b-c",
    ],
    ["a, b, c", "a, b, c", "b, b, c", "c, b, 2*b-c", "a, b, c", "a, b, c"],
    [
        "2*a, 2*b, 2*c",
        "2*a, b+c, 2*c",
        "2*b, b+c, 2*c",
        "2*b, b+c, 2*c",
        "a+c, b+c, 2*c",
        "a+c, b+c, 2*c",
    ],
    [
        "3*a, 3*b, 3*c",
        "3*a, b+2*c, 3*c",
        "3*b, b+2*c, 3*c",
        "b+2*c, 2*b+c, 3*c",
        "a+2*c, b+2*c, 3*c",
        "a+2*c, b+2*c, 3*c",
    ],
];

const H: [&str; 6] = ["a+b+c", "a+2*c", "b+2*c", "3*c", "3*c", "3*c"];

fn parse_list(list: &str) -> Vec<LinearForm> {
    list.split(',')
        .map(|w| w.trim().parse().expect("transcribed weight parses"))
        .collect()
}

/// Weights of the six representatives, before permutation.
pub fn representative_weights(orbit_type: u8) -> BTreeMap<String, Vec<LinearForm>> {
    let i = usize::from(orbit_type - 1);
    let mut weights = BTreeMap::new();
    weights.insert(BUNDLE_E.to_string(), parse_list(E[i]));
    weights.insert(BUNDLE_TANGENT.to_string(), parse_list(TANGENT[i]));
    for (d, name) in BUNDLE_TAUT.iter().enumerate() {
        weights.insert(name.to_string(), parse_list(TAUT[d][i]));
    }
    weights.insert(BUNDLE_H.to_string(), parse_list(H[i]));
    weights
}

/// The reference table at all 31 fixed points: type 1 once, types 2-6 under
/// all six permutations, in the same order as
/// [`crate::fixedlocus::enumerate_fixed_points`].
pub fn reference_weight_table() -> WeightTable {
    let mut points = Vec::new();
    for orbit_type in 1..=6u8 {
        let base = representative_weights(orbit_type);
        let perms = if orbit_type == 1 { &PERMUTATIONS[..1] } else { &PERMUTATIONS[..] };
        for &perm in perms {
            let weights = base
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|w| w.permute(perm)).collect()))
                .collect();
            points.push(PointWeights { id: points.len(), orbit_type, perm, weights });
        }
    }
    WeightTable { points }
}
