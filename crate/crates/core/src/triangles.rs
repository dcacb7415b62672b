//! Nets of conics and the dagger operation: apolar complements, Jacobian
//! spaces, complete-triangle membership, and the first-order deformation
//! system at the fat/thin complete triangle.
//!
//! Quadric coefficients are dual numbers `x0 + eps * x1` stored as
//! [`ExactPoly`] values, so the same code handles nets and their first-order
//! deformations.

use std::fmt;

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dual_parts, rank_rational, rref_dual, rref_rational};
use crate::poly::ExactPoly;
use crate::Plane;

/// Quadric monomial order `X^2, Y^2, Z^2, XY, XZ, YZ` (the same order is
/// used for dual quadrics).
pub const QUADRIC_MONOMIALS: [[u32; 3]; 6] =
    [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

/// `<X^e, Xv^e>` = product of the factorials of the exponents.
const PAIRING: [i64; 6] = [2, 2, 2, 1, 1, 1];

pub type Quadric = [ExactPoly; 6];

pub fn quadric_index(exp: [u32; 3]) -> Option<usize> {
    QUADRIC_MONOMIALS.iter().position(|m| *m == exp)
}

pub fn monomial_quadric(exp: [u32; 3]) -> Option<Quadric> {
    let idx = quadric_index(exp)?;
    let mut q: Quadric = Default::default();
    q[idx] = ExactPoly::one();
    Some(q)
}

/// The apolarity pairing between a quadric and a dual quadric.
pub fn apolar_pair(q: &Quadric, r: &Quadric) -> ExactPoly {
    q.iter()
        .zip(r)
        .zip(PAIRING)
        .fold(ExactPoly::zero(), |acc, ((x, y), w)| acc + (x * y).scale(&BigRational::from_integer(w.into())))
}

/// A 3-dimensional space of quadrics on the primal or dual plane, kept in
/// reduced row echelon form so that equal spaces have equal bases.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadricSpace {
    plane: Plane,
    basis: Vec<Quadric>,
}

impl QuadricSpace {
    pub fn new(plane: Plane, rows: Vec<Quadric>) -> Result<Self> {
        let reduced = rref_dual(rows.into_iter().map(|q| q.to_vec()).collect())?;
        if reduced.pivots.len() != 3 || reduced.residual {
            return Err(Error::RankDeficient { rank: reduced.pivots.len() });
        }
        let basis = reduced
            .rows
            .into_iter()
            .map(|row| row.try_into().expect("six columns"))
            .collect();
        Ok(Self { plane, basis })
    }

    /// Span of quadric monomials.
    pub fn from_monomials(plane: Plane, monomials: &[[u32; 3]]) -> Result<Self> {
        let rows = monomials
            .iter()
            .map(|&m| monomial_quadric(m).ok_or_else(|| Error::Parse(format!("{m:?} is not a quadric"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(plane, rows)
    }

    /// Span of monomials written as `"XY, X^2, YZ"`; the letters `X, Y, Z`
    /// stand for the dual coordinates when `plane` is dual.
    pub fn span(plane: Plane, text: &str) -> Result<Self> {
        let monomials = text
            .split(',')
            .map(|tok| parse_xyz_monomial(tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_monomials(plane, &monomials)
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn basis(&self) -> &[Quadric] {
        &self.basis
    }
}

/// Parses a monomial in `X, Y, Z` such as `XY`, `X^2`, `Y*Z^2`, `Y^2X`.
pub fn parse_xyz_monomial(tok: &str) -> Result<[u32; 3]> {
    let bad = || Error::Parse(format!("bad monomial `{tok}`"));
    let mut exp = [0u32; 3];
    let chars: Vec<char> = tok.chars().filter(|c| *c != '*').collect();
    if chars.is_empty() {
        return Err(bad());
    }
    let mut i = 0;
    while i < chars.len() {
        let idx = match chars[i] {
            'X' => 0,
            'Y' => 1,
            'Z' => 2,
            _ => return Err(bad()),
        };
        i += 1;
        let mut power = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            power = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
        }
        exp[idx] += power;
    }
    Ok(exp)
}

fn fmt_quadric(q: &Quadric, plane: Plane) -> String {
    let names: [&str; 6] = match plane {
        Plane::Primal => ["X^2", "Y^2", "Z^2", "XY", "XZ", "YZ"],
        Plane::Dual => ["Xv^2", "Yv^2", "Zv^2", "XvYv", "XvZv", "YvZv"],
    };
    let parts: Vec<String> = q
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if *c == ExactPoly::one() { n.to_string() } else { format!("({c})*{n}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for QuadricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|q| fmt_quadric(q, self.plane)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl fmt::Debug for QuadricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadricSpace({:?}, {self})", self.plane)
    }
}

/// The space of quadrics on the other plane annihilated by `space` under
/// apolarity. With eps-perturbed input this is the first-order complement.
pub fn apolar_complement(space: &QuadricSpace) -> Result<QuadricSpace> {
    let rows: Vec<Vec<ExactPoly>> = space
        .basis
        .iter()
        .map(|q| {
            q.iter()
                .zip(PAIRING)
                .map(|(x, w)| x.scale(&BigRational::from_integer(w.into())))
                .collect()
        })
        .collect();
    let reduced = rref_dual(rows)?;
    if reduced.pivots.len() != 3 || reduced.residual {
        return Err(Error::RankDeficient { rank: reduced.pivots.len() });
    }
    let free: Vec<usize> = (0..6).filter(|c| !reduced.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut w: Quadric = Default::default();
            w[f] = ExactPoly::one();
            for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
                w[p] = -&row[f];
            }
            w
        })
        .collect();
    QuadricSpace::new(space.plane.other(), kernel)
}

/// Gradient of a quadric as three linear forms (coefficients of the
/// three coordinates).
fn gradient(q: &Quadric) -> [[ExactPoly; 3]; 3] {
    let mut grad: [[ExactPoly; 3]; 3] = Default::default();
    for (coeff, exp) in q.iter().zip(QUADRIC_MONOMIALS) {
        if coeff.is_zero() {
            continue;
        }
        for k in 0..3 {
            if exp[k] == 0 {
                continue;
            }
            let mut rest = exp;
            rest[k] -= 1;
            let l = rest.iter().position(|&e| e == 1).expect("degree one remainder");
            let factor = BigRational::from_integer(i64::from(exp[k]).into());
            grad[k][l] = &grad[k][l] + &coeff.scale(&factor);
        }
    }
    grad
}

fn linear_product(p: &[ExactPoly; 3], q: &[ExactPoly; 3]) -> Quadric {
    let mut out: Quadric = Default::default();
    for s in 0..3 {
        for t in 0..3 {
            let mut exp = [0u32; 3];
            exp[s] += 1;
            exp[t] += 1;
            let idx = quadric_index(exp).expect("quadric monomial");
            out[idx] = &out[idx] + &(&p[s] * &q[t]);
        }
    }
    out
}

/// Span of the nine 2x2 minors of the Jacobian matrix of a basis.
pub fn jacobian_space(space: &QuadricSpace) -> Result<QuadricSpace> {
    let grads: Vec<_> = space.basis.iter().map(gradient).collect();
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut minors = Vec::with_capacity(9);
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            let plus = linear_product(&grads[i][k], &grads[j][l]);
            let minus = linear_product(&grads[i][l], &grads[j][k]);
            minors.push(plus.iter().zip(&minus).map(|(x, y)| x - y).collect::<Vec<_>>());
        }
    }
    let reduced = rref_dual(minors)?;
    if reduced.pivots.len() != 3 || reduced.residual {
        return Err(Error::JacobianDimension {
            dim: reduced.pivots.len() + usize::from(reduced.residual),
        });
    }
    let basis = reduced
        .rows
        .into_iter()
        .map(|row| row.try_into().expect("six columns"))
        .collect();
    Ok(QuadricSpace { plane: space.plane, basis })
}

/// `Jac(V^*)`: sends the net of a triangle to the net of its side lines.
pub fn dagger(space: &QuadricSpace) -> Result<QuadricSpace> {
    jacobian_space(&apolar_complement(space)?)
}

/// Whether `(T, T*)` with the given nets is a complete triangle.
pub fn verify_ct_membership(net: &QuadricSpace, other_net: &QuadricSpace) -> bool {
    matches!(dagger(net), Ok(d) if d == *other_net)
}

/// Parameter order of the first-order deformation at the fat point
/// `(X^2, XY, Y^2)` paired with the thin scheme `(Zv, Xv^3)`.
pub const DEFORMATION_PARAMS: [&str; 12] = [
    "alpha1", "beta1", "alpha2", "beta2", "alpha3", "beta3", "gamma1", "gamma2", "gamma3", "delta1",
    "delta2", "delta3",
];

const ALPHA1: usize = 0;
const BETA1: usize = 1;
const ALPHA2: usize = 2;
const BETA2: usize = 3;
const ALPHA3: usize = 4;
const BETA3: usize = 5;
const DELTA1: usize = 9;
const DELTA2: usize = 10;
const DELTA3: usize = 11;

fn eps_times(x: &BigRational) -> ExactPoly {
    ExactPoly::eps().scale(x)
}

fn quadric(entries: &[(usize, ExactPoly)]) -> Quadric {
    let mut q: Quadric = Default::default();
    for (idx, v) in entries {
        q[*idx] = &q[*idx] + v;
    }
    q
}

// Column indices in QUADRIC_MONOMIALS order.
const XX: usize = 0;
const YY: usize = 1;
const ZZ: usize = 2;
const XY: usize = 3;
const XZ: usize = 4;
const YZ: usize = 5;

/// `<X^2 + e(a1 XZ + b1 YZ), XY + e(a2 XZ + b2 YZ), Y^2 + e(a3 XZ + b3 YZ)>`.
pub fn deformed_fat_net(p: &[BigRational; 12]) -> Result<QuadricSpace> {
    let one = ExactPoly::one;
    let rows = vec![
        quadric(&[(XX, one()), (XZ, eps_times(&p[ALPHA1])), (YZ, eps_times(&p[BETA1]))]),
        quadric(&[(XY, one()), (XZ, eps_times(&p[ALPHA2])), (YZ, eps_times(&p[BETA2]))]),
        quadric(&[(YY, one()), (XZ, eps_times(&p[ALPHA3])), (YZ, eps_times(&p[BETA3]))]),
    ];
    QuadricSpace::new(Plane::Primal, rows)
}

/// Net of the deformed thin scheme
/// `(Xv^3 + e(g1 Xv^2 Yv + ...), Zv + e(d1 Xv^2 + d2 XvYv + d3 Yv^2)/Yv)`:
/// `<XvZv + e(d2 Xv^2 + d3 XvYv), YvZv + e(d1 Xv^2 + d2 XvYv + d3 Yv^2), Zv^2>`.
/// The `gamma` parameters do not enter the net.
pub fn deformed_thin_net(p: &[BigRational; 12]) -> Result<QuadricSpace> {
    let one = ExactPoly::one;
    let rows = vec![
        quadric(&[(XZ, one()), (XX, eps_times(&p[DELTA2])), (XY, eps_times(&p[DELTA3]))]),
        quadric(&[
            (YZ, one()),
            (XX, eps_times(&p[DELTA1])),
            (XY, eps_times(&p[DELTA2])),
            (YY, eps_times(&p[DELTA3])),
        ]),
        quadric(&[(ZZ, one())]),
    ];
    QuadricSpace::new(Plane::Dual, rows)
}

/// First-order part of `dagger(fat net) - thin net` in canonical form,
/// flattened; zero exactly when the deformation stays in CT.
pub fn deformation_defect(p: &[BigRational; 12]) -> Result<Vec<BigRational>> {
    let lhs = dagger(&deformed_fat_net(p)?)?;
    let rhs = deformed_thin_net(p)?;
    let mut out = Vec::with_capacity(18);
    for (l, r) in lhs.basis.iter().zip(&rhs.basis) {
        for (x, y) in l.iter().zip(r) {
            let (base, first) = dual_parts(&(x - y))?;
            if !base.is_zero() {
                return Err(Error::Deformation(format!("undeformed nets differ: {lhs} vs {rhs}")));
            }
            out.push(first);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSystem {
    /// Reduced row echelon form of the linear conditions, one row per
    /// equation, columns in [`DEFORMATION_PARAMS`] order.
    pub equations: Vec<Vec<BigRational>>,
    pub kernel_dim: usize,
}

impl DeformationSystem {
    /// Whether the conditions cut out the same subspace as `rows`.
    pub fn matches(&self, rows: &[Vec<BigRational>]) -> bool {
        rref_rational(rows.to_vec()).0 == self.equations
    }

    /// Indices of the rows of `rows` that are not consequences of this system.
    pub fn unimplied(&self, rows: &[Vec<BigRational>]) -> Vec<usize> {
        let rank = self.equations.len();
        rows.iter()
            .enumerate()
            .filter(|(_, row)| {
                let mut extended = self.equations.clone();
                extended.push((*row).clone());
                rank_rational(extended) > rank
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds the linear system on the 12 deformation parameters column by
/// column (the defect is linear to first order) and row-reduces it.
pub fn deformation_system() -> Result<DeformationSystem> {
    let mut columns = Vec::with_capacity(12);
    for j in 0..12 {
        let mut p: [BigRational; 12] = Default::default();
        p[j] = BigRational::from_integer(1.into());
        columns.push(deformation_defect(&p)?);
    }
    let nrows = columns[0].len();
    let rows: Vec<Vec<BigRational>> = (0..nrows)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    let (equations, pivots) = rref_rational(rows);
    Ok(DeformationSystem { kernel_dim: 12 - pivots.len(), equations })
}

fn equation_rows(rows: &[&[(usize, i64)]]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|entries| {
            let mut r = vec![BigRational::zero(); 12];
            for &(idx, v) in *entries {
                r[idx] = BigRational::from_integer(v.into());
            }
            r
        })
        .collect()
}

/// Human-readable form of a row `sum c_i p_i = 0`.
pub fn format_equation(row: &[BigRational]) -> String {
    let terms: Vec<String> = row
        .iter()
        .zip(DEFORMATION_PARAMS)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| format!("{c}*{name}"))
        .collect();
    if terms.is_empty() {
        "0 = 0".into()
    } else {
        format!("{} = 0", terms.join(" + "))
    }
}

/// The six conditions as published with the smoothness computation:
/// `d2 = b2, d3 = a2 - b3, 0 = a3, d1 = b1, d2 = b2 - a1, d3 = -a2`,
/// each as a row `lhs - rhs = 0`.
pub fn published_deformation_equations() -> Vec<Vec<BigRational>> {
    equation_rows(&[
        &[(DELTA2, 1), (BETA2, -1)],
        &[(DELTA3, 1), (ALPHA2, -1), (BETA3, 1)],
        &[(ALPHA3, 1)],
        &[(DELTA1, 1), (BETA1, -1)],
        &[(DELTA2, 1), (BETA2, -1), (ALPHA1, 1)],
        &[(DELTA3, 1), (ALPHA2, 1)],
    ])
}

/// The same six conditions with the `XvZv`-row `Xv^2` coefficient of the
/// dagger expanded directly, which gives `d2 = -b2` in place of `d2 = b2`.
pub fn corrected_deformation_equations() -> Vec<Vec<BigRational>> {
    let mut rows = published_deformation_equations();
    rows[0][BETA2] = BigRational::from_integer(1.into());
    rows
}
