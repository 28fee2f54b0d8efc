//! Exact norm polynomials in the coordinate basis of each family.

use std::collections::HashMap;

use super::{octonion, Family, JordanAlgebraSpec};
use crate::poly::{rat, Polynomial};

/// The Koecher norm as an exact polynomial in `dim` variables, one per
/// coordinate (`x1` is coordinate 0). Spin factors use the diagonal
/// convention `x1^2 + ... + xd^2`.
pub fn koecher_norm_polynomial(spec: JordanAlgebraSpec) -> Polynomial {
    let nv = spec.dim();
    match spec.family {
        Family::RealSymmetric(n) => {
            let mut idx = vec![vec![0; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    idx[i][j] = k;
                    idx[j][i] = k;
                    k += 1;
                }
            }
            determinant(nv, &idx)
        }
        Family::HermitianComplex(n) => {
            let idx: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
            determinant(nv, &idx)
        }
        Family::HermitianQuaternion(k) => pfaffian_polynomial(2 * k),
        Family::SpinFactor(d) => {
            let terms = (0..d).map(|i| {
                let mut e = vec![0; d];
                e[i] = 2;
                (e, rat(1))
            });
            Polynomial::from_terms(d, terms).expect("matching arity")
        }
        Family::Albert => albert_cubic(),
    }
}

/// Determinant of the matrix whose `(i, j)` entry is variable `idx[i][j]`,
/// by Laplace expansion along rows with minors memoized on the column set.
fn determinant(nv: usize, idx: &[Vec<usize>]) -> Polynomial {
    let n = idx.len();
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    memo.insert(0, Polynomial::one(nv));
    // Minors are indexed by their column set; the rows used are the last
    // `popcount` rows.
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = Polynomial::zero(nv);
        let mut sign = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let minor = &memo[&(mask & !(1 << col))];
            let term = minor * &Polynomial::var(nv, idx[row][col]);
            acc = if sign { &acc + &term } else { &acc - &term };
            sign = !sign;
        }
        memo.insert(mask, acc);
    }
    memo.remove(&((1u32 << n) - 1)).unwrap()
}

/// Pfaffian of the generic skew `s x s` matrix with variables `z_ij`,
/// `i < j`, numbered row-major.
fn pfaffian_polynomial(s: usize) -> Polynomial {
    let nv = s * (s - 1) / 2;
    let var_of = |i: usize, j: usize| -> usize { i * s - i * (i + 1) / 2 + (j - i - 1) };
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    fn go(mask: u32, nv: usize, var_of: &dyn Fn(usize, usize) -> usize, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(nv);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = Polynomial::zero(nv);
        let mut sign = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = go(rest & !(1 << j), nv, var_of, memo);
            let term = &sub * &Polynomial::var(nv, var_of(i, j));
            acc = if sign { &acc + &term } else { &acc - &term };
            sign = !sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go((1u32 << s) - 1, nv, &var_of, &mut memo)
}

/// `abc - a n(u) - b n(v) - c n(w) + 2 Re((uv)w)` on coordinates
/// `(a, b, c, u0..u7, v0..v7, w0..w7)`.
fn albert_cubic() -> Polynomial {
    let nv = 27;
    let (ua, va, wa) = (3, 11, 19);
    let mono = |pairs: &[usize]| {
        let mut e = vec![0u32; nv];
        for &p in pairs {
            e[p] += 1;
        }
        e
    };
    let mut terms = vec![(mono(&[0, 1, 2]), rat(1))];
    for (diag, off) in [(0, ua), (1, va), (2, wa)] {
        for i in 0..8 {
            terms.push((mono(&[diag, off + i, off + i]), rat(-1)));
        }
    }
    let t = octonion::table();
    for i in 0..8 {
        for j in 0..8 {
            let (s1, k) = t[i][j];
            // Re(e_k e_l) is nonzero only for l = k.
            let (s2, _) = t[k][k];
            terms.push((mono(&[ua + i, va + j, wa + k]), rat(2 * (s1 * s2) as i64)));
        }
    }
    Polynomial::from_terms(nv, terms).expect("matching arity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{koecher_det, polynomial_coordinates, random_element};
    use crate::linalg::rel_diff_scalar;
    use crate::poly::irreducibility_check;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(s: &str) -> JordanAlgebraSpec {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(koecher_norm_polynomial(spec("sym:2")), "x1*x3 - x2^2".parse().unwrap());
        assert_eq!(koecher_norm_polynomial(spec("herm:2")), "x1*x4 - x2*x3".parse().unwrap());
        assert_eq!(koecher_norm_polynomial(spec("spin:4")), "x1^2 + x2^2 + x3^2 + x4^2".parse().unwrap());
        assert_eq!(koecher_norm_polynomial(spec("quat:2")), "x1*x6 - x2*x5 + x3*x4".parse().unwrap());
    }

    #[test]
    fn polynomial_matches_numeric_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for s in ["sym:3", "sym:4", "herm:3", "quat:2", "quat:3", "spin:3", "spin:6", "albert"] {
            let sp = spec(s);
            let p = koecher_norm_polynomial(sp);
            assert_eq!(p.total_degree(), Some(sp.rank() as u32), "{s}");
            for _ in 0..5 {
                let x = random_element(sp, &mut rng, 1.0);
                let v = p.evaluate_complex(polynomial_coordinates(&x).as_slice()).unwrap();
                assert!(rel_diff_scalar(v, koecher_det(&x)) < 1e-10, "{s}");
            }
        }
    }

    #[test]
    fn pfaffian_squares_to_skew_determinant() {
        for k in 1..=3 {
            let s = 2 * k;
            let pf = koecher_norm_polynomial(spec(&format!("quat:{k}")));
            let nv = pf.nvars();
            let mut idx = vec![vec![0usize; s]; s];
            let mut v = 0;
            for i in 0..s {
                for j in i + 1..s {
                    idx[i][j] = v;
                    v += 1;
                }
            }
            // Determinant of the skew matrix, built with signed entries.
            let entry = |i: usize, j: usize| -> Polynomial {
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => Polynomial::var(nv, idx[i][j]),
                    std::cmp::Ordering::Greater => -Polynomial::var(nv, idx[j][i]),
                    std::cmp::Ordering::Equal => Polynomial::zero(nv),
                }
            };
            let det = leibniz(s, &entry);
            assert_eq!(&pf * &pf, det, "k = {k}");
        }
    }

    fn leibniz(n: usize, entry: &dyn Fn(usize, usize) -> Polynomial) -> Polynomial {
        fn rec(row: usize, n: usize, used: &mut Vec<bool>, sign: bool, acc: Polynomial, entry: &dyn Fn(usize, usize) -> Polynomial, out: &mut Polynomial) {
            if acc.is_zero() {
                return;
            }
            if row == n {
                *out = if sign { &*out + &acc } else { &*out - &acc };
                return;
            }
            for col in 0..n {
                if used[col] {
                    continue;
                }
                // Parity of the number of used columns after `col`.
                let inv = used[col + 1..].iter().filter(|&&u| u).count() % 2 == 1;
                used[col] = true;
                rec(row + 1, n, used, if inv { !sign } else { sign }, &acc * &entry(row, col), entry, out);
                used[col] = false;
            }
        }
        let nv = entry(0, 0).nvars();
        let mut out = Polynomial::zero(nv);
        rec(0, n, &mut vec![false; n], true, Polynomial::one(nv), entry, &mut out);
        out
    }

    #[test]
    fn norms_are_irreducible() {
        for s in ["sym:2", "sym:3", "herm:2", "herm:3", "quat:2", "quat:3", "spin:3", "spin:5", "albert"] {
            let p = koecher_norm_polynomial(spec(s));
            let r = irreducibility_check(&p, 8, 1).unwrap();
            assert!(r.is_irreducible(), "{s}: {r:?}");
        }
    }

    #[test]
    fn constant_term_absent() {
        assert!(koecher_norm_polynomial(spec("albert")).constant_value().map_or(true, |c| c.is_zero()));
    }
}
