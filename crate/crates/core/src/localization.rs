//! Equivariant classes restricted to fixed points, and Bott's residue
//! formula evaluated at integer specializations of the torus weights.
//!
//! A degree-`n` integral on an `n`-dimensional space is a rational function
//! of `a, b, c` of degree 0, hence constant. We evaluate it at several
//! random integer triples and insist the values agree and are integral.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{elementary_symmetric, ExactPoly};
use crate::table::{WeightTable, BUNDLE_E, BUNDLE_H, BUNDLE_TANGENT};

pub const DEFAULT_SEED: u64 = 20_240_613;
pub const DEFAULT_SAMPLES: usize = 5;
/// Random triples are drawn from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 50;
const MAX_DRAWS: usize = 100_000;

pub const NU32: i64 = 4246;
pub const PORTEOUS_NAIVE: i64 = 57728;
/// Coefficients `(-1)^i C(13, i)` of the four integrand terms.
pub const INTEGRAND_COEFFS: [i64; 4] = [1, -13, 78, -286];

/// A class given by its restrictions to the fixed points, all homogeneous
/// of one degree.
#[derive(Clone, PartialEq, Eq)]
pub struct EquivariantClass {
    degree: u32,
    values: Vec<ExactPoly>,
}

impl EquivariantClass {
    pub fn new(degree: u32, values: Vec<ExactPoly>) -> Result<Self> {
        for (point, v) in values.iter().enumerate() {
            if !v.is_homogeneous(degree) {
                return Err(Error::NotHomogeneous { point, degree, poly: v.to_string() });
            }
        }
        Ok(Self { degree, values })
    }

    pub fn constant(points: usize, k: i64) -> Self {
        Self { degree: 0, values: vec![ExactPoly::from_int(k); points] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[ExactPoly] {
        &self.values
    }

    fn zip_same_degree(&self, other: &Self, f: impl Fn(&ExactPoly, &ExactPoly) -> ExactPoly) -> Result<Self> {
        // The zero polynomial is homogeneous of every degree, so the
        // constant 0 may be combined with anything.
        let degree = match (self.degree, other.degree) {
            (l, r) if l == r => l,
            (_, r) if self.is_zero() => r,
            (l, _) if other.is_zero() => l,
            (l, r) => return Err(Error::MixedDegree { left: l, right: r }),
        };
        Ok(Self { degree, values: self.values.iter().zip(&other.values).map(|(x, y)| f(x, y)).collect() })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ExactPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_same_degree(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_same_degree(other, |x, y| x - y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            degree: self.degree + other.degree,
            values: self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        Self { degree: self.degree, values: self.values.iter().map(|v| v.scale(&k)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn pow(&self, n: u32) -> Self {
        Self { degree: self.degree * n, values: self.values.iter().map(|v| v.pow(n)).collect() }
    }
}

impl fmt::Debug for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EquivariantClass(deg {}, {} points)", self.degree, self.values.len())
    }
}

/// How to choose the integer triples `(a, b, c)` to evaluate at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePlan {
    pub seed: u64,
    pub sample_count: usize,
    /// Used verbatim instead of random draws when present.
    pub triples: Option<Vec<[i64; 3]>>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, sample_count: DEFAULT_SAMPLES, triples: None }
    }
}

impl SamplePlan {
    pub fn new(seed: u64, sample_count: usize) -> Self {
        Self { seed, sample_count, triples: None }
    }

    pub fn explicit(triples: Vec<[i64; 3]>) -> Self {
        Self { seed: 0, sample_count: triples.len(), triples: Some(triples) }
    }

    /// The accepted triples: pairwise distinct entries, and no tangent weight
    /// of `table` vanishing.
    pub fn triples(&self, table: &WeightTable) -> Result<Vec<[i64; 3]>> {
        if self.sample_count < 3 {
            return Err(Error::SamplePlan(format!("need at least 3 samples, got {}", self.sample_count)));
        }
        let vanishing = |t: [i64; 3]| -> Result<Option<Error>> {
            for p in &table.points {
                for w in p.bundle(BUNDLE_TANGENT)? {
                    if w.evaluate(t).is_zero() {
                        return Ok(Some(Error::VanishingWeight { point: p.id, weight: w.to_string(), triple: t }));
                    }
                }
            }
            Ok(None)
        };
        let distinct = |t: [i64; 3]| t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
        if let Some(explicit) = &self.triples {
            for &t in explicit {
                if !distinct(t) {
                    return Err(Error::SamplePlan(format!("triple {t:?} has repeated entries")));
                }
                if let Some(e) = vanishing(t)? {
                    return Err(e);
                }
            }
            return Ok(explicit.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.sample_count);
        for _ in 0..MAX_DRAWS {
            if out.len() == self.sample_count {
                break;
            }
            let t: [i64; 3] = std::array::from_fn(|_| rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE));
            if distinct(t) && !out.contains(&t) && vanishing(t)?.is_none() {
                out.push(t);
            }
        }
        if out.len() < self.sample_count {
            return Err(Error::SamplePlan("could not find enough admissible triples".into()));
        }
        Ok(out)
    }
}

/// Result of integrating one class: the common value and the triples used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub value: BigRational,
    pub triples: Vec<[i64; 3]>,
}

impl Integral {
    pub fn integer(&self) -> Result<BigInt> {
        if !self.value.is_integer() {
            return Err(Error::NonInteger(self.value.to_string()));
        }
        Ok(self.value.to_integer())
    }
}

/// One named pass/fail line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Classes and integrals over a fixed weight table.
#[derive(Clone, Debug)]
pub struct Localizer {
    table: WeightTable,
    dimension: usize,
}

impl Localizer {
    pub fn new(table: WeightTable) -> Result<Self> {
        table.validate()?;
        let dimension = table.dimension()?;
        Ok(Self { table, dimension })
    }

    pub fn table(&self) -> &WeightTable {
        &self.table
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> usize {
        self.table.len()
    }

    pub fn constant(&self, k: i64) -> EquivariantClass {
        EquivariantClass::constant(self.points(), k)
    }

    /// `c_i(bundle)`: the `i`-th elementary symmetric function of the weights.
    pub fn chern(&self, bundle: &str, i: usize) -> Result<EquivariantClass> {
        let values = self
            .table
            .points
            .iter()
            .map(|p| elementary_symmetric(i, p.bundle(bundle)?))
            .collect::<Result<Vec<_>>>()?;
        EquivariantClass::new(i as u32, values)
    }

    pub fn h(&self) -> Result<EquivariantClass> {
        self.chern(BUNDLE_H, 1)
    }

    /// `c_i` of the tautological bundle twisted by `O(j)`.
    pub fn taut(&self, j: u32, i: usize) -> Result<EquivariantClass> {
        self.chern(&format!("taut{j}"), i)
    }

    /// `Delta_0 = e3^2 - e2 e4`, `Delta_2 = e2^2 - e1 e3`, `Delta_4 = e1^2 - e2`,
    /// `Delta_6 = 1`, with `e_k = c_k(E)`.
    pub fn delta(&self, k: u32) -> Result<EquivariantClass> {
        let e = |i| self.chern(BUNDLE_E, i);
        match k {
            0 => e(3)?.pow(2).sub(&e(2)?.mul(&e(4)?)),
            2 => e(2)?.pow(2).sub(&e(1)?.mul(&e(3)?)),
            4 => e(1)?.pow(2).sub(&e(2)?),
            6 => Ok(self.constant(1)),
            _ => Err(Error::UnknownClass(format!("Delta{k}"))),
        }
    }

    /// `inc = H^2 - c2(1) + 2 c2(2) - c2(3)` and `lin = c2(1)`.
    pub fn inc_lin(&self) -> Result<(EquivariantClass, EquivariantClass)> {
        let lin = self.taut(1, 2)?;
        let inc = self.h()?.pow(2).sub(&lin)?.add(&self.taut(2, 2)?.scale(2))?.sub(&self.taut(3, 2)?)?;
        Ok((inc, lin))
    }

    /// The four terms `(-1)^i C(13, i) Delta_{2i} (4 inc + lin)^i`, i = 0..3.
    pub fn integrand_terms(&self) -> Result<Vec<EquivariantClass>> {
        let (inc, lin) = self.inc_lin()?;
        let four_inc_lin = inc.scale(4).add(&lin)?;
        (0..4u32)
            .map(|i| Ok(self.delta(2 * i)?.mul(&four_inc_lin.pow(i)).scale(INTEGRAND_COEFFS[i as usize])))
            .collect()
    }

    pub fn ultimate_integrand(&self) -> Result<EquivariantClass> {
        let terms = self.integrand_terms()?;
        terms[1..].iter().try_fold(terms[0].clone(), |acc, t| acc.add(t))
    }

    /// Bott's formula at one triple: sum over fixed points of
    /// `cls(x) / prod(tangent weights at x)`.
    pub fn evaluate_at(&self, cls: &EquivariantClass, t: [i64; 3]) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (p, v) in self.table.points.iter().zip(cls.values()) {
            let mut denom = BigInt::one();
            for w in p.bundle(BUNDLE_TANGENT)? {
                let x = w.evaluate(t);
                if x.is_zero() {
                    return Err(Error::VanishingWeight { point: p.id, weight: w.to_string(), triple: t });
                }
                denom *= x;
            }
            total += v.substitute_ints(t)? / BigRational::from_integer(denom);
        }
        Ok(total)
    }

    /// The common value over all sample triples, which need not be integral.
    pub fn integrate_rational(&self, cls: &EquivariantClass, plan: &SamplePlan) -> Result<Integral> {
        if cls.degree() as usize != self.dimension {
            return Err(Error::Degree { found: cls.degree(), expected: self.dimension as u32 });
        }
        let triples = plan.triples(&self.table)?;
        let mut first: Option<BigRational> = None;
        for &t in &triples {
            let v = self.evaluate_at(cls, t)?;
            match &first {
                None => first = Some(v),
                Some(f) if *f != v => {
                    return Err(Error::NonConstant {
                        first: f.to_string(),
                        first_triple: triples[0],
                        other: v.to_string(),
                        other_triple: t,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(Integral { value: first.expect("at least 3 triples"), triples })
    }

    pub fn bott_integrate(&self, cls: &EquivariantClass, plan: &SamplePlan) -> Result<BigInt> {
        self.integrate_rational(cls, plan)?.integer()
    }

    pub fn nu32(&self, plan: &SamplePlan) -> Result<BigInt> {
        self.bott_integrate(&self.ultimate_integrand()?, plan)
    }

    pub fn porteous_naive(&self, plan: &SamplePlan) -> Result<BigInt> {
        self.bott_integrate(&self.delta(0)?, plan)
    }

    /// The eight classical integrals with known values.
    pub fn sanity_classes(&self) -> Result<Vec<(&'static str, EquivariantClass, i64)>> {
        let h = self.h()?;
        let (inc, lin) = self.inc_lin()?;
        let c32 = self.taut(2, 3)?;
        let c33 = self.taut(3, 3)?;
        Ok(vec![
            ("H^6", h.pow(6), 15),
            ("H^4*inc", h.pow(4).mul(&inc), 3),
            ("c3(2)^2", c32.pow(2), 4),
            ("c3(3)^2", c33.pow(2), 84),
            ("c3(2)*c3(3)", c32.mul(&c33), 20),
            ("lin^3", lin.pow(3), 0),
            ("inc^2*lin", inc.pow(2).mul(&lin), 0),
            ("inc^3", inc.pow(3), 1),
        ])
    }

    pub fn sanity_suite(&self, plan: &SamplePlan) -> Result<Vec<Check>> {
        Ok(self
            .sanity_classes()?
            .into_iter()
            .map(|(name, cls, expected)| match self.bott_integrate(&cls, plan) {
                Ok(v) => Check {
                    name: name.into(),
                    passed: v == BigInt::from(expected),
                    detail: format!("{v} (expected {expected})"),
                },
                Err(e) => Check { name: name.into(), passed: false, detail: e.to_string() },
            })
            .collect())
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn format_factorization(factors: &[(u64, u32)]) -> String {
    factors
        .iter()
        .map(|&(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
        .collect::<Vec<_>>()
        .join(" * ")
}
