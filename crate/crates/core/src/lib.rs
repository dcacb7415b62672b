//! Exact equivariant localization on the space of complete triangles.
//!
//! The crate derives torus weights at the 31 fixed points of the space of
//! complete triangles from monomial ideal data, checks them against a
//! transcribed reference table, and evaluates top-degree Chern numbers by
//! Bott's residue formula in exact rational arithmetic. The headline number
//! is the count 4246 of 3-uple Veronese surfaces through 13 general points
//! of P^9 (with the uncorrected Porteous number 57728 for comparison).

pub mod cli;
pub mod error;
pub mod expr;
pub mod fixedlocus;
pub mod linalg;
pub mod localization;
pub mod poly;
pub mod reference;
pub mod staircase;
pub mod table;
pub mod triangles;

pub use error::{Error, Result};
pub use poly::{ExactPoly, LinearForm};

/// Which of the two planes an object lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Plane {
    Primal,
    Dual,
}

impl Plane {
    pub fn other(self) -> Self {
        match self {
            Plane::Primal => Plane::Dual,
            Plane::Dual => Plane::Primal,
        }
    }
}
