//! Exact Gauss–Jordan elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Solution {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

/// Solves `rows * x = rhs` for `x` with `ncols` unknowns; extra rows are
/// checked for consistency.
pub(crate) fn solve(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>, ncols: usize) -> Solution {
    let nrows = rows.len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        // Smallest nonzero entry keeps intermediate sizes down.
        let best = (pivot_row..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].numer().bits() + rows[r][col].denom().bits());
        let Some(r) = best else {
            return Solution::Underdetermined;
        };
        rows.swap(pivot_row, r);
        rhs.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row][col..].iter_mut() {
            *x *= &inv;
        }
        rhs[pivot_row] *= &inv;
        let prow = rows[pivot_row].clone();
        let prhs = rhs[pivot_row].clone();
        for r in 0..nrows {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                if !prow[c].is_zero() {
                    let d = &f * &prow[c];
                    rows[r][c] -= d;
                }
            }
            rhs[r] -= &f * &prhs;
        }
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|x| !x.is_zero()) {
        return Solution::Inconsistent;
    }
    Solution::Unique(rhs[..ncols].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(r: &[&[i64]]) -> Vec<Vec<BigRational>> {
        r.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn overdetermined_consistent() {
        let rows = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let rhs = vec![rat(3), rat(1), rat(4)];
        assert_eq!(solve(rows, rhs, 2), Solution::Unique(vec![rat(2), rat(1)]));
    }

    #[test]
    fn detects_failures() {
        let rows = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(rows, vec![rat(1), rat(2)], 2), Solution::Underdetermined);
        let rows = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(rows, vec![rat(1), rat(1), rat(3)], 2), Solution::Inconsistent);
    }
}
