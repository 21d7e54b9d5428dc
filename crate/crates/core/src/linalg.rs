//! Exact linear algebra over the rationals.
//!
//! Rows are scaled to primitive integer vectors and reduced by fraction-free
//! Gauss-Jordan elimination (cross-multiplication followed by content
//! removal), so no intermediate fractions appear. Rationals are formed only
//! when reading off a solution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{lcm_of_denominators, Rational};

/// Reduced row echelon form of an integer matrix, with the pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect();
    primitive(&mut out);
    out
}

/// Fraction-free Gauss-Jordan elimination on the first `ncols` columns.
pub fn echelon(matrix: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = matrix.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pvv) in row.iter_mut().zip(&pivot_row) {
                *v = &*v * &pv - &f * pvv;
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    echelon(matrix, ncols).pivots.len()
}

/// Solves `A x = b` exactly. Returns `None` when the system is inconsistent;
/// free variables are set to zero.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], nvars: usize) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = echelon(&augmented, nvars);
    // any non-pivot row with a non-zero right-hand side is a contradiction
    for row in ech.rows.iter().skip(ech.pivots.len()) {
        if !row[nvars].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); nvars];
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        x[c] = Rational::new(row[nvars].clone(), row[c].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn solves_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let b = vec![int(3), int(5)];
        assert_eq!(solve(&a, &b, 2).unwrap(), vec![frac(4, 5), frac(7, 5)]);
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(-1, 6)]];
        let b = vec![int(1), int(0)];
        let x = solve(&a, &b, 2).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1], int(1));
        assert_eq!(&a[1][0] * &x[0] + &a[1][1] * &x[1], int(0));
    }

    #[test]
    fn inconsistent_and_rank_deficient() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&a, &[int(1), int(3)], 2).is_none());
        assert_eq!(solve(&a, &[int(1), int(2)], 2).unwrap(), vec![int(1), int(0)]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn overdetermined_consistent() {
        let a = vec![vec![int(1)], vec![int(0)], vec![int(2)]];
        assert_eq!(solve(&a, &[int(3), int(0), int(6)], 1).unwrap(), vec![int(3)]);
        assert!(solve(&a, &[int(3), int(1), int(6)], 1).is_none());
    }
}
