//! Exact linear algebra over the rationals.
//!
//! Rows are first scaled to integers (which leaves row space and kernel
//! unchanged), then reduced with fraction-free Bareiss elimination. Only the
//! final back-substitution for kernel vectors and solutions uses rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Scalar;

/// Row echelon form with integer entries.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in row {
        if !c.is_zero() {
            l = l.lcm(c.denom());
        }
    }
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

/// Fraction-free elimination of an integer matrix with `ncols` columns.
pub fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                // still has to be rescaled to keep later divisions exact
                for j in c + 1..ncols {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * pv / &prev;
                    }
                }
                continue;
            }
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = pv * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

pub fn echelon(rows: &[Vec<Scalar>], ncols: usize) -> Echelon {
    bareiss(rows.iter().map(|r| integer_row(r)).collect(), ncols)
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    echelon(rows, ncols).rank()
}

fn back_substitute(e: &Echelon, x: &mut [Scalar], rhs: Option<&[Scalar]>) {
    for (r, &p) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut s = rhs.map(|b| b[r].clone()).unwrap_or_else(Scalar::zero);
        for j in p + 1..e.ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                s -= Scalar::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[p] = s / Scalar::from_integer(row[p].clone());
    }
}

/// Basis of the right kernel, one vector per free column, each scaled to a
/// primitive integer vector with positive last nonzero entry at its free column.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let e = echelon(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Scalar::zero(); ncols];
        x[f] = Scalar::one();
        back_substitute(&e, &mut x, None);
        out.push(primitive(&x));
    }
    out
}

/// Integer multiple with content 1; sign kept so the last nonzero entry is positive.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let last_neg = v.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let s = Scalar::new(if last_neg { -l } else { l }, g);
    v.iter().map(|c| c * &s).collect()
}

/// Reduced row echelon form (nonzero rows only) by rational Gauss-Jordan.
pub fn rref(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let e = echelon(rows, ncols);
    let mut m: Vec<Vec<Scalar>> = e
        .rows
        .iter()
        .map(|r| r.iter().map(|c| Scalar::from_integer(c.clone())).collect())
        .collect();
    for (r, &p) in e.pivots.iter().enumerate() {
        let inv = Scalar::one() / &m[r][p];
        for c in m[r].iter_mut() {
            *c *= &inv;
        }
    }
    for (r, &p) in e.pivots.iter().enumerate().rev() {
        let pivot_row = m[r].clone();
        for row in m.iter_mut().take(r) {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *c -= &f * pv;
                }
            }
        }
    }
    m
}

/// One solution of `A x = b` (free variables set to zero).
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Result<Vec<Scalar>> {
    if a.len() != b.len() {
        return Err(Error::Precondition("row count differs from right-hand side".into()));
    }
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = echelon(&aug, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return Err(Error::Inconsistent);
    }
    let rhs: Vec<Scalar> = e
        .rows
        .iter()
        .map(|r| Scalar::from_integer(r[ncols].clone()))
        .collect();
    let reduced = Echelon {
        rows: e.rows,
        pivots: e.pivots,
        ncols,
    };
    let mut x = vec![Scalar::zero(); ncols];
    back_substitute(&reduced, &mut x, Some(&rhs));
    Ok(x)
}

/// Determinant of a square rational matrix.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut l = BigInt::one();
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let mut rl = BigInt::one();
            for c in row {
                rl = rl.lcm(c.denom());
            }
            l *= &rl;
            row.iter().map(|c| c.numer() * (&rl / c.denom())).collect()
        })
        .collect();
    // track row swaps for the sign
    let mut a = ints;
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    if n == 0 {
        return Scalar::one();
    }
    Scalar::new(sign * prev, l)
}
