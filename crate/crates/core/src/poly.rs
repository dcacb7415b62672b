//! Exact polynomials over the rationals in the equivariant parameters
//! `a`, `b`, `c`, extended by a nilpotent `eps` with `eps^2 = 0`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, and every operation
//! drops zero coefficients, so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents of `(a, b, c, eps)`.
pub type Exponent = [u32; 4];

pub const VAR_NAMES: [&str; 4] = ["a", "b", "c", "eps"];
const EPS: usize = 3;

/// A permutation of the three torus parameters, given as the images of
/// `a`, `b`, `c`: `[1, 2, 0]` sends `a -> b`, `b -> c`, `c -> a`.
pub type Perm = [usize; 3];

/// The six permutations of `(a, b, c)`, identity first.
pub const PERMUTATIONS: [Perm; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(exp: Exponent, coeff: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// The variable with index `idx` (0 = a, 1 = b, 2 = c, 3 = eps).
    pub fn var(idx: usize) -> Self {
        let mut exp = [0; 4];
        exp[idx] = 1;
        Self::monomial(exp, BigRational::one())
    }

    pub fn a() -> Self {
        Self::var(0)
    }

    pub fn b() -> Self {
        Self::var(1)
    }

    pub fn c() -> Self {
        Self::var(2)
    }

    pub fn eps() -> Self {
        Self::var(EPS)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if exp[EPS] > 1 || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn eps_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[EPS]).max().unwrap_or(0)
    }

    /// True when every term has degree `degree` in `a, b, c` and no `eps`.
    /// The zero polynomial is homogeneous of every degree.
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| e[EPS] == 0 && e[0] + e[1] + e[2] == degree)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `(a, b, c) = (a0, b0, c0)`.
    pub fn substitute(&self, a0: &BigRational, b0: &BigRational, c0: &BigRational) -> Result<BigRational> {
        if self.eps_degree() > 0 {
            return Err(Error::ContainsEpsilon(self.to_string()));
        }
        let vals = [a0, b0, c0];
        let mut total = BigRational::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (v, &e) in vals.iter().zip(exp.iter()) {
                for _ in 0..e {
                    term *= *v;
                }
            }
            total += term;
        }
        Ok(total)
    }

    pub fn substitute_ints(&self, triple: [i64; 3]) -> Result<BigRational> {
        let [a0, b0, c0] = triple.map(|v| BigRational::from_integer(v.into()));
        self.substitute(&a0, &b0, &c0)
    }

    /// Rename variables: `a_i -> a_{perm[i]}`; `eps` is untouched.
    pub fn permute(&self, perm: Perm) -> Self {
        let mut out = Self::zero();
        for (exp, coeff) in &self.terms {
            let mut e = [0, 0, 0, exp[EPS]];
            for i in 0..3 {
                e[perm[i]] = exp[i];
            }
            out.add_term(e, coeff.clone());
        }
        out
    }

    /// Sum of `self` over all six permutations of `a, b, c`.
    pub fn symmetrize(&self) -> Self {
        PERMUTATIONS
            .iter()
            .fold(Self::zero(), |acc, &p| acc + self.permute(p))
    }

    /// Splits `p = p0 + eps * p1`.
    pub fn split_eps(&self) -> (Self, Self) {
        let mut base = Self::zero();
        let mut first = Self::zero();
        for (exp, coeff) in &self.terms {
            let mut e = *exp;
            if e[EPS] == 1 {
                e[EPS] = 0;
                first.add_term(e, coeff.clone());
            } else {
                base.add_term(e, coeff.clone());
            }
        }
        (base, first)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    fn sorted_terms(&self) -> Vec<(&Exponent, &BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(x, _), (y, _)| {
            let dx: u32 = x.iter().sum();
            let dy: u32 = y.iter().sum();
            dy.cmp(&dx).then_with(|| y.cmp(x))
        });
        terms
    }
}

impl From<&LinearForm> for ExactPoly {
    fn from(w: &LinearForm) -> Self {
        let mut p = Self::zero();
        for (i, c) in w.coeffs.iter().enumerate() {
            let mut exp = [0; 4];
            exp[i] = 1;
            p.add_term(exp, BigRational::from_integer(c.clone()));
        }
        p
    }
}

impl From<LinearForm> for ExactPoly {
    fn from(w: LinearForm) -> Self {
        Self::from(&w)
    }
}

impl Add<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: &ExactPoly) -> ExactPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<ExactPoly> for &'a ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: ExactPoly) -> ExactPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

fn fmt_monomial(exp: &Exponent) -> String {
    exp.iter()
        .zip(VAR_NAMES)
        .filter(|(e, _)| **e > 0)
        .map(|(e, name)| if *e == 1 { name.to_string() } else { format!("{name}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical rendering: graded-lexicographic order, highest degree first,
/// with explicit rational coefficients, e.g. `3/4*a^2*b - b^2 + 1`.
impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(exp);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

fn parse_factor(tok: &str, coeff: &mut BigRational, exp: &mut Exponent) -> Result<()> {
    let bad = || Error::Parse(format!("bad factor `{tok}`"));
    if tok.chars().next().is_some_and(|ch| ch.is_ascii_digit()) {
        let value = match tok.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(tok.parse().map_err(|_| bad())?),
        };
        *coeff *= value;
        return Ok(());
    }
    let (name, power) = match tok.split_once('^') {
        Some((name, p)) => (name, p.parse::<u32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let idx = VAR_NAMES.iter().position(|v| *v == name).ok_or_else(bad)?;
    exp[idx] += power;
    Ok(())
}

/// Parses the canonical rendering (and anything close to it: products with
/// `*`, powers with `^`, integer or `p/q` coefficients, no parentheses).
impl FromStr for ExactPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = ExactPoly::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let mut coeff = BigRational::from_integer(sign.into());
            let mut exp = [0; 4];
            for tok in body.split('*') {
                parse_factor(tok, &mut coeff, &mut exp)?;
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integral linear form `x*a + y*b + z*c`: a single torus weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    pub coeffs: [BigInt; 3],
}

impl LinearForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { coeffs: [a.into(), b.into(), c.into()] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The weight of the coordinate with index `idx`.
    pub fn basis(idx: usize) -> Self {
        let mut w = Self::zero();
        w.coeffs[idx] = BigInt::one();
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self { coeffs: self.coeffs.clone().map(|c| c * &k) }
    }

    pub fn permute(&self, perm: Perm) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            out.coeffs[perm[i]] = self.coeffs[i].clone();
        }
        out
    }

    pub fn evaluate(&self, triple: [i64; 3]) -> BigInt {
        self.coeffs
            .iter()
            .zip(triple)
            .map(|(c, v)| c * BigInt::from(v))
            .sum()
    }

    pub fn to_i64s(&self) -> Option<[i64; 3]> {
        Some([
            self.coeffs[0].to_i64()?,
            self.coeffs[1].to_i64()?,
            self.coeffs[2].to_i64()?,
        ])
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: [
                &self.coeffs[0] + &rhs.coeffs[0],
                &self.coeffs[1] + &rhs.coeffs[1],
                &self.coeffs[2] + &rhs.coeffs[2],
            ],
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: [
                &self.coeffs[0] - &rhs.coeffs[0],
                &self.coeffs[1] - &rhs.coeffs[1],
                &self.coeffs[2] - &rhs.coeffs[2],
            ],
        }
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        &self + &rhs
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        &self - &rhs
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.map(|c| -c) }
    }
}

impl std::iter::Sum for LinearForm {
    fn sum<I: Iterator<Item = LinearForm>>(iter: I) -> Self {
        iter.fold(LinearForm::zero(), |acc, w| acc + w)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(["a", "b", "c"]) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: ExactPoly = s.parse()?;
        let mut w = LinearForm::zero();
        for (exp, coeff) in p.terms() {
            let idx = match exp {
                [1, 0, 0, 0] => 0,
                [0, 1, 0, 0] => 1,
                [0, 0, 1, 0] => 2,
                _ => return Err(Error::NotLinearForm(s.to_string())),
            };
            if !coeff.is_integer() {
                return Err(Error::NotLinearForm(s.to_string()));
            }
            w.coeffs[idx] = coeff.to_integer();
        }
        Ok(w)
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ints = self
            .to_i64s()
            .ok_or_else(|| serde::ser::Error::custom("weight coefficient exceeds i64"))?;
        ints.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[i64; 3]>::deserialize(deserializer)?;
        Ok(LinearForm::new(a, b, c))
    }
}

/// `sigma_i` of the given weights, fully expanded.
pub fn elementary_symmetric(i: usize, weights: &[LinearForm]) -> Result<ExactPoly> {
    if i > weights.len() {
        return Err(Error::SymmetricIndex { index: i, len: weights.len() });
    }
    // e[k] holds sigma_k of the weights consumed so far.
    let mut e = vec![ExactPoly::zero(); i + 1];
    e[0] = ExactPoly::one();
    for w in weights {
        let w = ExactPoly::from(w);
        for k in (1..=i).rev() {
            e[k] = &e[k] + &(&e[k - 1] * &w);
        }
    }
    Ok(e.swap_remove(i))
}
