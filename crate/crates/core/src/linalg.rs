//! Row reduction over the rationals and over the dual numbers `Q[eps]/(eps^2)`.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;

/// Reduced row echelon form over `Q`. Returns the nonzero rows and the
/// pivot column of each.
pub fn rref_rational(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = BigRational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_rational(rows: Vec<Vec<BigRational>>) -> usize {
    rref_rational(rows).1.len()
}

/// Splits a dual-number scalar `x0 + eps * x1` into `(x0, x1)`.
pub fn dual_parts(p: &ExactPoly) -> Result<(BigRational, BigRational)> {
    let (base, first) = p.split_eps();
    match (base.as_constant(), first.as_constant()) {
        (Some(x0), Some(x1)) => Ok((x0, x1)),
        _ => Err(Error::NotDualScalar(p.to_string())),
    }
}

fn is_unit(p: &ExactPoly) -> Result<bool> {
    Ok(!dual_parts(p)?.0.is_zero())
}

/// `(x0 + eps x1)^-1 = 1/x0 - eps x1/x0^2`; `x0` must be nonzero.
pub fn dual_inverse(p: &ExactPoly) -> Result<ExactPoly> {
    let (x0, x1) = dual_parts(p)?;
    let inv = BigRational::one() / &x0;
    let first = -(&x1 * &inv * &inv);
    Ok(ExactPoly::constant(inv) + ExactPoly::eps().scale(&first))
}

#[derive(Debug, Clone)]
pub struct DualRref {
    pub rows: Vec<Vec<ExactPoly>>,
    pub pivots: Vec<usize>,
    /// Leftover rows with only eps-multiples after elimination: the span is
    /// then not a free module of rank `pivots.len()`.
    pub residual: bool,
}

/// Row reduction over `Q[eps]/(eps^2)` using unit pivots only.
pub fn rref_dual(mut rows: Vec<Vec<ExactPoly>>) -> Result<DualRref> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut found = None;
        for i in r..rows.len() {
            if is_unit(&rows[i][col])? {
                found = Some(i);
                break;
            }
        }
        let Some(found) = found else { continue };
        rows.swap(r, found);
        let inv = dual_inverse(&rows[r][col])?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&factor * p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let residual = rows[r..].iter().any(|row| row.iter().any(|x| !x.is_zero()));
    rows.truncate(r);
    Ok(DualRref { rows, pivots, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_rank() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        let (reduced, pivots) = rref_rational(rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(reduced, vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]]);
    }

    #[test]
    fn dual_inverse_roundtrip() {
        let x: ExactPoly = "3 + 2*eps".parse().unwrap();
        assert_eq!(&x * &dual_inverse(&x).unwrap(), ExactPoly::one());
    }

    #[test]
    fn dual_residual_detected() {
        let e = ExactPoly::eps();
        let one = ExactPoly::one();
        let zero = ExactPoly::zero();
        let out = rref_dual(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), e]]).unwrap();
        assert_eq!(out.pivots, vec![0]);
        assert!(out.residual);
    }
}
