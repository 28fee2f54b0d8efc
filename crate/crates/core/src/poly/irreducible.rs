//! Irreducibility over the rationals by restriction to random lines.
//!
//! If `p` restricted to a line keeps its full degree, stays square-free and is
//! irreducible as a univariate polynomial, then `p` itself is irreducible: a
//! factorization of `p` would restrict to one of the line. When every trial
//! line gives a reducible restriction, the factor is reconstructed from a
//! pencil of lines through a common base point and confirmed by exact
//! division, so both definite answers are certificates.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gcd::content_in;
use super::linsolve::{solve, Solution};
use super::univariate::random_small;
use super::{Monomial, PolyError, Polynomial, Result, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    /// Irreducible over the rationals. `complex_split` marks forms that
    /// nevertheless split into linear factors over the complex numbers
    /// (binary forms and rank-2 quadratic forms).
    Irreducible { complex_split: bool },
    Reducible(ReducibleWitness),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibleWitness {
    #[serde(serialize_with = "as_text")]
    pub factor: Polynomial,
    #[serde(serialize_with = "as_text")]
    pub cofactor: Polynomial,
    /// Degrees of the univariate factors on the line that exposed the split;
    /// empty when a content computation found it.
    pub restriction_degrees: Vec<usize>,
}

fn as_text<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

const MAX_SUBSETS: usize = 64;
const MAX_UNKNOWNS: usize = 1500;

/// Decides irreducibility of `p` with at most `trials` random lines, drawing
/// all randomness from `seed`.
pub fn irreducibility_check(p: &Polynomial, trials: usize, seed: u64) -> Result<Irreducibility> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let support: Vec<usize> = p.support().into_iter().collect();
    let Some(deg) = p.total_degree().filter(|&d| d > 0) else {
        return Ok(Irreducibility::Inconclusive);
    };
    let n = p.nvars();
    let mut map = vec![0; n];
    for (k, &v) in support.iter().enumerate() {
        map[v] = k;
    }
    let q = p.remap(support.len(), &map).normalized();
    let lift = |g: &Polynomial| g.remap(n, &support).normalized();

    let homogeneous = q.is_homogeneous()?.is_some();
    let complex_split = homogeneous && deg >= 2 && (support.len() == 2 || (deg == 2 && quadratic_rank(&q) == 2));
    if deg == 1 {
        return Ok(Irreducibility::Irreducible { complex_split: false });
    }
    for v in 0..support.len() {
        let c = content_in(&q, v);
        if !c.is_constant() {
            let cof = q.exact_div(&c).expect("content divides");
            return Ok(Irreducibility::Reducible(ReducibleWitness {
                factor: lift(&c),
                cofactor: lift(&cof),
                restriction_degrees: Vec::new(),
            }));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = support.len();
    let mut pencil: Option<(Vec<BigRational>, Vec<BigRational>, Vec<UniPoly>)> = None;
    for trial in 0..trials {
        let range = 6 + trial as i64;
        let a: Vec<BigRational> = (0..m).map(|_| random_small(&mut rng, range)).collect();
        let b: Vec<BigRational> = (0..m).map(|_| random_small(&mut rng, range)).collect();
        if q.evaluate(&a)?.is_zero() {
            continue;
        }
        let Some(factors) = line_factors(&q, &a, &b, deg, &mut rng) else {
            continue;
        };
        if factors.len() == 1 {
            return Ok(Irreducibility::Irreducible { complex_split });
        }
        if pencil.is_none() {
            pencil = Some((a, b, factors));
        }
    }
    let Some((a, u, factors)) = pencil else {
        return Ok(Irreducibility::Inconclusive);
    };
    let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
    match recover_factor(&q, homogeneous, &a, &u, &factors, &mut rng) {
        Some(g) => {
            let cof = q.exact_div(&g).expect("recovered factor divides");
            Ok(Irreducibility::Reducible(ReducibleWitness {
                factor: lift(&g),
                cofactor: lift(&cof),
                restriction_degrees: degrees,
            }))
        }
        None => Ok(Irreducibility::Inconclusive),
    }
}

/// Irreducible factors of `q(a + t b)`, each scaled to value 1 at `t = 0`;
/// `None` if the restriction drops degree or is not square-free.
fn line_factors(
    q: &Polynomial,
    a: &[BigRational],
    b: &[BigRational],
    deg: u32,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<UniPoly>> {
    let h = q.restrict_to_line(a, b).ok()?;
    if h.degree() != Some(deg as usize) || !h.is_squarefree() {
        return None;
    }
    let mut out: Vec<UniPoly> = h
        .factor(rng)
        .into_iter()
        .map(|(f, _)| {
            let c0 = f.coeff(0).recip();
            f.scale(&c0)
        })
        .collect();
    out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.coeffs().cmp(y.coeffs())));
    Some(out)
}

fn t1(f: &UniPoly) -> BigRational {
    f.coeff(1)
}

/// Index subsets of `factors` with degree sum `r`, by bitmask.
fn subsets_of_degree(factors: &[UniPoly], r: usize) -> Vec<u64> {
    let k = factors.len().min(20);
    (1u64..(1 << k))
        .filter(|mask| {
            (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| factors[i].degree().unwrap())
                .sum::<usize>()
                == r
        })
        .collect()
}

fn subset_t1(factors: &[UniPoly], mask: u64) -> BigRational {
    (0..factors.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| t1(&factors[i]))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

fn subset_product(factors: &[UniPoly], mask: u64) -> UniPoly {
    (0..factors.len())
        .filter(|i| mask >> i & 1 == 1)
        .fold(UniPoly::one(), |acc, i| acc.mul(&factors[i]))
}

fn basis(m: usize, r: u32, homogeneous: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    let lo = if homogeneous { r } else { 0 };
    for d in lo..=r {
        let mut e = vec![0u32; m];
        compositions(d, 0, &mut e, &mut out);
    }
    out
}

fn compositions(left: u32, i: usize, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 == e.len() {
        e[i] = left;
        out.push(Monomial::from_exponents(e.clone()));
        e[i] = 0;
        return;
    }
    for k in 0..=left {
        e[i] = k;
        compositions(left - k, i + 1, e, out);
    }
    e[i] = 0;
}

/// Coefficients of `t^0..=t^r` in `mu(a + t d)` for every basis monomial.
fn restricted_basis(basis: &[Monomial], a: &[BigRational], d: &[BigRational], r: usize) -> Vec<Vec<BigRational>> {
    basis
        .iter()
        .map(|mu| {
            let mut acc = UniPoly::one();
            for (i, &e) in mu.exponents().iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&UniPoly::from_coeffs(vec![a[i].clone(), d[i].clone()]).pow(e));
                }
            }
            (0..=r).map(|k| acc.coeff(k)).collect()
        })
        .collect()
}

struct Equations {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
}

impl Equations {
    fn add_line(&mut self, basis: &[Monomial], a: &[BigRational], d: &[BigRational], target: &UniPoly, r: usize) {
        let cols = restricted_basis(basis, a, d, r);
        for k in 1..=r {
            self.rows.push(cols.iter().map(|c| c[k].clone()).collect());
            self.rhs.push(target.coeff(k));
        }
    }
}

/// Reconstructs a proper factor of `q` from its restrictions to lines
/// `a + t (u + lambda v_k)`. Within one plane the linear coefficient of the
/// restricted factor is affine in `lambda`, which pins down which univariate
/// factors belong to it on every line.
fn recover_factor(
    q: &Polynomial,
    homogeneous: bool,
    a: &[BigRational],
    u: &[BigRational],
    factors0: &[UniPoly],
    rng: &mut ChaCha8Rng,
) -> Option<Polynomial> {
    let m = q.nvars();
    let deg = q.total_degree()?;
    let mut tried = 0;
    for r in 1..=(deg / 2) as usize {
        let basis = basis(m, r as u32, homogeneous);
        if basis.len() > MAX_UNKNOWNS {
            return None;
        }
        for mask0 in subsets_of_degree(factors0, r) {
            tried += 1;
            if tried > MAX_SUBSETS {
                return None;
            }
            if let Some(g) = recover_with(q, &basis, a, u, factors0, mask0, r, deg, rng) {
                return Some(g);
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn recover_with(
    q: &Polynomial,
    basis: &[Monomial],
    a: &[BigRational],
    u: &[BigRational],
    factors0: &[UniPoly],
    mask0: u64,
    r: usize,
    deg: u32,
    rng: &mut ChaCha8Rng,
) -> Option<Polynomial> {
    let m = q.nvars();
    let n_unknowns = basis.len();
    let mut eq = Equations { rows: Vec::new(), rhs: Vec::new() };
    // G(a) = 1
    eq.rows.push(restricted_basis(basis, a, u, 0).into_iter().map(|c| c[0].clone()).collect());
    eq.rhs.push(BigRational::one());
    let h0 = subset_product(factors0, mask0);
    eq.add_line(basis, a, u, &h0, r);
    let s0 = subset_t1(factors0, mask0);
    let lambdas = r + 2;
    let mut planes = 0;
    let max_planes = n_unknowns + 8;
    while planes < max_planes {
        planes += 1;
        let v: Vec<BigRational> = (0..m).map(|_| random_small(rng, 9)).collect();
        let mut lines = Vec::with_capacity(lambdas);
        for lambda in 1..=lambdas {
            let l = BigRational::from_integer((lambda as i64).into());
            let d: Vec<BigRational> = u.iter().zip(&v).map(|(x, y)| x + &l * y).collect();
            match line_factors(q, a, &d, deg, rng) {
                Some(f) => lines.push((d, f)),
                None => break,
            }
        }
        if lines.len() < lambdas {
            continue;
        }
        let mut chosen: Option<Vec<u64>> = None;
        for mask1 in subsets_of_degree(&lines[0].1, r) {
            let step = subset_t1(&lines[0].1, mask1) - &s0;
            let mut picks = vec![mask1];
            for (j, (_, f)) in lines.iter().enumerate().skip(1) {
                let want = &s0 + &step * BigRational::from_integer(((j + 1) as i64).into());
                match subsets_of_degree(f, r).into_iter().find(|&mk| subset_t1(f, mk) == want) {
                    Some(mk) => picks.push(mk),
                    None => break,
                }
            }
            if picks.len() == lambdas {
                chosen = Some(picks);
                break;
            }
        }
        let picks = chosen?;
        for ((d, f), mk) in lines.iter().zip(picks) {
            eq.add_line(basis, a, d, &subset_product(f, mk), r);
        }
        if eq.rows.len() < n_unknowns {
            continue;
        }
        match solve(eq.rows.clone(), eq.rhs.clone(), n_unknowns) {
            Solution::Unique(c) => {
                let g = Polynomial::from_terms(
                    m,
                    basis
                        .iter()
                        .zip(c)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(mu, c)| (mu.exponents().to_vec(), c)),
                )
                .ok()?
                .normalized();
                return (!g.is_constant() && g.divides(q)).then_some(g);
            }
            Solution::Inconsistent => return None,
            Solution::Underdetermined => {}
        }
    }
    None
}

/// Rank of the symmetric matrix of a quadratic form.
fn quadratic_rank(q: &Polynomial) -> usize {
    let m = q.nvars();
    let half = BigRational::new(1.into(), 2.into());
    let mut mat = vec![vec![BigRational::zero(); m]; m];
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        if idx.len() != 2 {
            continue;
        }
        if idx[0] == idx[1] {
            mat[idx[0]][idx[0]] += c;
        } else {
            mat[idx[0]][idx[1]] += c * &half;
            mat[idx[1]][idx[0]] += c * &half;
        }
    }
    rank(mat)
}

/// Number of linearly independent first partials: the least number of
/// variables `p` can be written in after an invertible linear change.
pub fn essential_variables(p: &Polynomial) -> usize {
    let partials: Vec<Polynomial> = (0..p.nvars()).map(|i| p.partial_derivative(i).expect("index in range")).collect();
    let monos: Vec<&Monomial> = {
        let mut all: Vec<&Monomial> = partials.iter().flat_map(|d| d.terms().map(|(m, _)| m)).collect();
        all.sort();
        all.dedup();
        all
    };
    let mat = partials.iter().map(|d| monos.iter().map(|m| d.coefficient(m)).collect()).collect();
    rank(mat)
}

fn rank(mut mat: Vec<Vec<BigRational>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        let pivot = mat[r].clone();
        for row in mat.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for k in c..cols {
                let d = &f * &pivot[k];
                row[k] -= d;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn essential_variable_counts() {
        assert_eq!(essential_variables(&p("x1*x4 - x2*x3")), 4);
        assert_eq!(essential_variables(&p("(x1 + x2)^2 + x3^2")), 2);
        assert_eq!(essential_variables(&p("(x1 - x2)^3")), 1);
        assert_eq!(essential_variables(&p("x1^2 + x2^2 + x3^2")), 3);
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn check(s: &str) -> Irreducibility {
        irreducibility_check(&p(s), 32, 7).unwrap()
    }

    #[test]
    fn monomial_is_reducible() {
        match check("x1*x2") {
            Irreducibility::Reducible(w) => assert_eq!(&w.factor * &w.cofactor, p("x1*x2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn determinant_is_irreducible() {
        assert_eq!(check("x1*x4 - x2*x3"), Irreducibility::Irreducible { complex_split: false });
    }

    #[test]
    fn sum_of_squares_flags() {
        assert_eq!(check("x1^2 + x2^2 + x3^2"), Irreducibility::Irreducible { complex_split: false });
        assert_eq!(check("x1^2 + x2^2"), Irreducibility::Irreducible { complex_split: true });
    }

    #[test]
    fn recovers_factor_with_full_support() {
        let f = p("x1^2 - x2^2 + x3^2 - 2*x1*x3");
        match check("x1^2 - x2^2 + x3^2 - 2*x1*x3") {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.factor.total_degree(), Some(1));
                assert_eq!((&w.factor * &w.cofactor).normalized(), f.normalized());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn recovers_quadratic_times_quadratic() {
        let a = p("x1*x4 - x2*x3");
        let b = p("x1^2 + x2*x3 + x4^2 - x1*x2");
        let f = &a * &b;
        match irreducibility_check(&f, 16, 3).unwrap() {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.factor.total_degree(), Some(2));
                assert!(w.factor == a || w.factor == b.normalized());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let f = p("x1^3 + x2^3 + x3^3 - 3*x1*x2*x3");
        assert_eq!(irreducibility_check(&f, 8, 11), irreducibility_check(&f, 8, 11));
    }
}
