//! Exact fraction-free row reduction over the integers.
//!
//! Rational rows are cleared of denominators, then eliminated with integer
//! row operations; every row is divided by the gcd of its entries after each
//! step so that entries stay small.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Rational;

/// Integer reduced row echelon form: pivot columns are zero in every other
/// row. Pivot entries are positive but not necessarily 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<Vec<i128>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the nullspace, one vector per free column, with a 1 in
    /// that column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[f] = Rational::from_integer(1);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row[f] != 0 {
                    v[p] = Rational::new(-row[f], row[p]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn integer_row(row: &[Rational]) -> Result<Vec<i128>> {
    let mut l: i128 = 1;
    for x in row {
        l = l.lcm(x.denom());
    }
    row.iter()
        .map(|x| x.numer().checked_mul(l / x.denom()).ok_or(Error::Overflow))
        .collect()
}

fn make_primitive(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Reduces the rows (each of length `ncols`).
pub fn row_reduce(rows: &[Vec<Rational>], ncols: usize) -> Result<Echelon> {
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(rows.len());
    for r in rows {
        assert_eq!(r.len(), ncols, "row length mismatch");
        let mut ir = integer_row(r)?;
        make_primitive(&mut ir);
        if ir.iter().any(|x| *x != 0) {
            m.push(ir);
        }
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == m.len() {
            break;
        }
        let Some(best) = (next..m.len()).filter(|&i| m[i][col] != 0).min_by_key(|&i| m[i][col].abs()) else {
            continue;
        };
        m.swap(next, best);
        if m[next][col] < 0 {
            for x in m[next].iter_mut() {
                *x = -*x;
            }
        }
        let pivot_row = m[next].clone();
        let p = pivot_row[col];
        for (i, row) in m.iter_mut().enumerate() {
            if i == next || row[col] == 0 {
                continue;
            }
            let g = p.gcd(&row[col]);
            let (a, b) = (p / g, row[col] / g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let lhs = x.checked_mul(a).ok_or(Error::Overflow)?;
                let rhs = y.checked_mul(b).ok_or(Error::Overflow)?;
                *x = lhs.checked_sub(rhs).ok_or(Error::Overflow)?;
            }
            make_primitive(row);
        }
        pivots.push(col);
        next += 1;
    }
    m.truncate(next);
    Ok(Echelon { ncols, rows: m, pivots })
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> Result<usize> {
    Ok(row_reduce(rows, ncols)?.rank())
}

pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Result<Vec<Vec<Rational>>> {
    Ok(row_reduce(rows, ncols)?.nullspace())
}

/// `Σ row[i] * v[i]` for a dense vector.
pub fn dot(row: &[Rational], v: &[Rational]) -> Rational {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: &[&[i128]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = r(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = row_reduce(&m, 3).unwrap();
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn rational_entries() {
        let m = vec![vec![Rational::new(1, 2), Rational::new(-1, 3)]];
        let ns = nullspace(&m, 2).unwrap();
        assert_eq!(ns, vec![vec![Rational::new(2, 3), Rational::from_integer(1)]]);
    }

    #[test]
    fn empty_and_zero_rows() {
        assert_eq!(rank(&[], 4).unwrap(), 0);
        assert_eq!(nullspace(&r(&[&[0, 0]]), 2).unwrap().len(), 2);
        assert_eq!(rank(&r(&[&[0, 5], &[0, 7]]), 2).unwrap(), 1);
    }
}
