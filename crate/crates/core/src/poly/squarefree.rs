//! Square-free decomposition `p = c * prod S_k^k`.
//!
//! The input is first split into factors on disjoint variable sets (a
//! Hessian-of-log zero test modulo a word prime proposes the split, exact
//! multiplication confirms it). Each block is then tried as a perfect power
//! `H^e` by an exact power-series root in one variable; whatever remains goes
//! through Yun's algorithm in a main variable, with the content in that
//! variable handled recursively.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gcd::{content_in, gcd_rec};
use super::modular::{addmod, mulmod, rational_to_word, submod, WORD_PRIME};
use super::{Monomial, PolyError, Polynomial, Result};

/// `constant * prod factor^multiplicity`, factors primitive with positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub constant: BigRational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl FactoredForm {
    pub fn expand(&self, nvars: usize) -> Polynomial {
        let mut acc = Polynomial::constant(nvars, self.constant.clone());
        for (f, k) in &self.factors {
            acc = acc.try_mul(&f.pow(*k)).expect("factor variable count");
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, k)| *k == 1)
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.factors.iter().map(|(_, k)| *k).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct FactoredFormRepr {
    constant: String,
    factors: Vec<(String, u32)>,
}

impl Serialize for FactoredForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredFormRepr {
            constant: self.constant.to_string(),
            factors: self.factors.iter().map(|(f, k)| (f.to_string(), *k)).collect(),
        }
        .serialize(s)
    }
}

/// True iff `p` has no repeated factor: the gcd of `p` with its whole
/// gradient is constant.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut g = p.normalized();
    for v in p.support() {
        if g.is_constant() {
            break;
        }
        let d = p.partial_derivative(v)?;
        g = gcd_rec(&g, &d);
    }
    Ok(g.is_constant())
}

/// Multiplicity-graded square-free parts, multiplicities strictly
/// increasing.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<FactoredForm> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = p.nvars();
    let c = p.content();
    let f = if c.is_one() && p.leading_coefficient().is_positive() {
        Cow::Borrowed(p)
    } else {
        Cow::Owned(p.primitive().1)
    };
    let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
    if !f.is_constant() {
        for block in separate_blocks(&f) {
            for (s, k) in block_decomposition(&block) {
                let entry = parts.entry(k).or_insert_with(|| Polynomial::one(n));
                *entry = entry.try_mul(&s)?;
            }
        }
    }
    let factors: Vec<(Polynomial, u32)> = parts
        .into_iter()
        .filter(|(_, s)| !s.is_constant())
        .map(|(k, s)| (s.normalized(), k))
        .collect();
    // Leading terms multiply under a monomial order.
    let mut lc = BigRational::one();
    for (s, k) in &factors {
        lc *= num_traits::pow(s.leading_coefficient(), *k as usize);
    }
    Ok(FactoredForm {
        constant: p.leading_coefficient() / lc,
        factors,
    })
}

fn block_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    if let Some((h, e)) = largest_perfect_root(f) {
        return block_decomposition(&h)
            .into_iter()
            .map(|(s, k)| (s, k * e))
            .collect();
    }
    yun(f)
}

/// Multivariate Yun: picks a main variable, runs Yun on the primitive part
/// and recurses on the content.
fn yun(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let v = *f
        .support()
        .iter()
        .min_by_key(|&&v| (f.degree_in(v), v))
        .unwrap();
    let cont = content_in(f, v);
    let prim = if cont.is_constant() {
        f.clone()
    } else {
        f.exact_div(&cont).expect("content divides")
    };
    let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
    let mut push = |s: Polynomial, k: u32| {
        let entry = out.entry(k).or_insert_with(|| Polynomial::one(f.nvars()));
        *entry = entry.try_mul(&s).unwrap();
    };
    for (s, k) in yun_in_var(&prim, v) {
        push(s, k);
    }
    for (s, k) in block_decomposition(&cont) {
        push(s, k);
    }
    out.into_iter().map(|(k, s)| (s.normalized(), k)).collect()
}

fn yun_in_var(f: &Polynomial, v: usize) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let df = f.partial_derivative(v).unwrap();
    let g = gcd_rec(f, &df);
    let mut c = f.exact_div(&g).expect("gcd divides");
    let mut d = df
        .exact_div(&g)
        .expect("gcd divides")
        .try_sub(&c.partial_derivative(v).unwrap())
        .unwrap();
    let mut k = 1;
    while !c.is_constant() {
        let a = if d.is_zero() { c.normalized() } else { gcd_rec(&c, &d) };
        if !a.is_constant() {
            out.push((a.normalized(), k));
        }
        c = c.exact_div(&a).expect("gcd divides");
        d = d
            .exact_div(&a)
            .expect("gcd divides")
            .try_sub(&c.partial_derivative(v).unwrap())
            .unwrap();
        k += 1;
    }
    out
}

/// Tries `f = c * H^e` for the largest admissible `e > 1`.
fn largest_perfect_root(f: &Polynomial) -> Option<(Polynomial, u32)> {
    let total = f.total_degree()?;
    let mut g = total;
    for v in f.support() {
        g = g.gcd(&f.degree_in(v));
    }
    if g <= 1 {
        return None;
    }
    let v = main_variable(f)?;
    let slices = main_slices(f, v);
    let mut divisors: Vec<u32> = (2..=g).filter(|e| g % e == 0).collect();
    divisors.reverse();
    divisors.into_iter().find_map(|e| root_from_slices(f, v, &slices, e).map(|h| (h, e)))
}

/// Main variable of largest degree keeps the leading slice small.
fn main_variable(f: &Polynomial) -> Option<usize> {
    f.support().into_iter().max_by_key(|&v| (f.degree_in(v), std::cmp::Reverse(v)))
}

/// Coefficients in `v`, highest power first.
fn main_slices(f: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut u = f.to_univariate(v);
    u.reverse();
    u
}

/// Exact `e`-th root up to a constant: returns normalized `H` with
/// `f = c * H^e`, or `None` if `f` is not such a power.
pub(crate) fn perfect_root(f: &Polynomial, e: u32) -> Option<Polynomial> {
    if e == 1 {
        return Some(f.normalized());
    }
    if f.is_constant() {
        return Some(Polynomial::one(f.nvars()));
    }
    let v = main_variable(f)?;
    root_from_slices(f, v, &main_slices(f, v), e)
}

fn root_from_slices(f: &Polynomial, v: usize, slices: &[Polynomial], e: u32) -> Option<Polynomial> {
    let dv = slices.len() - 1;
    if dv % e as usize != 0 {
        return None;
    }
    let lead = slices[0].leading_coefficient();
    let scale = lead.recip();
    let d = dv / e as usize;
    // Slices past 2d are only reached through the final exact check.
    let check = (2 * d).min(dv);
    let b: Vec<Polynomial> = slices[..=check].iter().map(|s| s.scale(&scale)).collect();
    let h0 = root_with_unit_lead(&b[0], e)?;
    let e_r = BigRational::from_integer(e.into());
    let coef = |j: usize, k: usize| BigRational::from_integer((((e as i64) + 1) * k as i64 - j as i64).into());
    let mut h = vec![h0.clone()];
    // j h0 B_j = sum_{k=1}^{j} ((e+1)k - j) h_k B_{j-k}
    for j in 1..=d {
        let jr = BigRational::from_integer(j.into());
        let mut acc = h0.try_mul(&b[j]).ok()?.scale(&jr);
        for k in 1..j {
            let t = h[k].try_mul(&b[j - k]).ok()?.scale(&coef(j, k));
            acc = acc.try_sub(&t).ok()?;
        }
        let hj = acc.exact_div(&b[0])?.scale(&(e_r.clone() * jr).recip());
        h.push(hj);
    }
    for j in d + 1..=check {
        let jr = BigRational::from_integer(j.into());
        let mut acc = Polynomial::zero(f.nvars());
        for k in 1..=d {
            let c = coef(j, k);
            if !c.is_zero() {
                acc = acc.try_add(&h[k].try_mul(&b[j - k]).ok()?.scale(&c)).ok()?;
            }
        }
        if acc.exact_div(&h0)?.scale(&jr.recip()) != b[j] {
            return None;
        }
    }
    let hv: Vec<Polynomial> = h.into_iter().rev().collect();
    let root = Polynomial::from_univariate(f.nvars(), v, &hv);
    (root.pow(e).scale(&lead) == *f).then(|| root.normalized())
}

/// `e`-th root of a polynomial whose leading coefficient is 1, with leading
/// coefficient 1.
fn root_with_unit_lead(p: &Polynomial, e: u32) -> Option<Polynomial> {
    if let Some(c) = p.constant_value() {
        return c.is_one().then(|| Polynomial::one(p.nvars()));
    }
    let total = p.total_degree()?;
    if total % e != 0 {
        return None;
    }
    // p = c h^e exactly, and lc(p) = 1 forces c = 1 once lc(h) = 1.
    let h = perfect_root(p, e)?;
    Some(h.scale(&h.leading_coefficient().recip()))
}

/// Splits `f` into factors on pairwise disjoint variable sets.
pub(crate) fn separate_blocks(f: &Polynomial) -> Vec<Cow<'_, Polynomial>> {
    let support: Vec<usize> = f.support().into_iter().collect();
    if support.len() <= 1 {
        return vec![Cow::Borrowed(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b10c);
    for _attempt in 0..3 {
        let comps = match log_hessian_components(f, &support, &mut rng) {
            Some(c) => c,
            None => continue,
        };
        if comps.len() == 1 {
            return vec![Cow::Borrowed(f)];
        }
        if let Some(blocks) = split_along(f, &comps, &mut rng) {
            return blocks.into_iter().map(Cow::Owned).collect();
        }
    }
    vec![Cow::Borrowed(f)]
}

/// Connected components of `{(i, j) : f d_ij f - d_i f d_j f != 0}` evaluated at
/// a random point modulo a word prime.
fn log_hessian_components(
    f: &Polynomial,
    support: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let n = f.nvars();
    let m = support.len();
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in support.iter().enumerate() {
        pos[v] = k;
    }
    let point: Vec<u64> = (0..n).map(|_| rng.random_range(1..WORD_PRIME)).collect();
    let inv: Vec<u64> = point.iter().map(|&x| super::modular::powmod_word(x, WORD_PRIME - 2)).collect();
    let mut value = 0u64;
    let mut grad = vec![0u64; m];
    let mut hess = vec![0u64; m * m];
    let mut nz: Vec<(usize, u64)> = Vec::with_capacity(m);
    for (mono, c) in f.terms() {
        let mut t = rational_to_word(c)?;
        nz.clear();
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                t = mulmod(t, super::modular::powmod_word(point[i], e as u64));
                nz.push((pos[i], e as u64));
            }
        }
        value = addmod(value, t);
        for &(a, ea) in &nz {
            grad[a] = addmod(grad[a], mulmod(t, ea));
            for &(b, eb) in &nz {
                let w = if a == b { ea * (ea - 1) } else { ea * eb };
                if w != 0 {
                    hess[a * m + b] = addmod(hess[a * m + b], mulmod(t, w % WORD_PRIME));
                }
            }
        }
    }
    if value == 0 {
        return None;
    }
    // Undo the x_i factors: d_i f = grad_i / x_i, d_ij f = hess_ij / (x_i x_j).
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..m {
        for b in a + 1..m {
            let ia = inv[support[a]];
            let ib = inv[support[b]];
            let gi = mulmod(grad[a], ia);
            let gj = mulmod(grad[b], ib);
            let hij = mulmod(hess[a * m + b], mulmod(ia, ib));
            let ex = submod(mulmod(value, hij), mulmod(gi, gj));
            if ex != 0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..m {
        let r = find(&mut parent, a);
        comps.entry(r).or_default().push(support[a]);
    }
    Some(comps.into_values().collect())
}

/// Exact split `f ~ prod_B f(x_B, c)`; `None` if the product check fails.
fn split_along(f: &Polynomial, comps: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Option<Vec<Polynomial>> {
    let n = f.nvars();
    let point: Vec<BigRational> = (0..n)
        .map(|_| BigRational::from_integer(rng.random_range(1i64..=7).into()))
        .collect();
    let fc = f.evaluate(&point).ok()?;
    if fc.is_zero() {
        return None;
    }
    let mut blocks = Vec::with_capacity(comps.len());
    for comp in comps {
        let mut inside = vec![false; n];
        for &v in comp {
            inside[v] = true;
        }
        let mut part: FxTerms = FxTerms::default();
        for (mono, c) in f.terms() {
            let mut coeff = c.clone();
            let mut exps = mono.exponents().to_vec();
            for (i, e) in exps.iter_mut().enumerate() {
                if !inside[i] && *e > 0 {
                    coeff *= num_traits::pow(point[i].clone(), *e as usize);
                    *e = 0;
                }
            }
            let key = Monomial::from_exponents(exps);
            match part.get_mut(&key) {
                Some(x) => *x += coeff,
                None => {
                    part.insert(key, coeff);
                }
            }
        }
        let poly = Polynomial::from_terms(
            n,
            part.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.exponents().to_vec(), c)),
        )
        .ok()?;
        blocks.push(poly.normalized());
    }
    let mut prod = Polynomial::one(n);
    for b in &blocks {
        prod = prod.try_mul(b).ok()?;
    }
    (prod.normalized() == f.normalized()).then_some(blocks)
}

type FxTerms = rustc_hash::FxHashMap<Monomial, BigRational>;


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn distinct_variable_powers() {
        let ff = squarefree_decomposition(&p("x1^2*x2^3")).unwrap();
        assert_eq!(ff.factors, vec![(p("x1").embed(2, 0).unwrap(), 2), (p("x2"), 3)]);
        assert_eq!(ff.constant, BigRational::one());
    }

    #[test]
    fn determinant_squared() {
        let d = p("x1*x4 - x2*x3");
        let ff = squarefree_decomposition(&d.pow(2)).unwrap();
        assert_eq!(ff.factors, vec![(d.clone(), 2)]);
        assert_eq!(ff.expand(4), d.pow(2));
    }

    #[test]
    fn squarefree_input_is_one_part() {
        let f = p("x1*x2*x3");
        let ff = squarefree_decomposition(&f).unwrap();
        assert_eq!(ff.factors, vec![(f.clone(), 1)]);
        assert!(is_squarefree(&f).unwrap());
        assert!(!is_squarefree(&p("x1^2*x2")).unwrap());
        assert!(!is_squarefree(&p("x1*x4 - x2*x3").pow(2)).unwrap());
    }

    #[test]
    fn constant_and_sign_are_reported() {
        let f = p("-6*x1^2*x2 - 6*x1*x2^2");
        let ff = squarefree_decomposition(&f).unwrap();
        assert_eq!(ff.expand(2), f);
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(squarefree_decomposition(&Polynomial::zero(2)), Err(PolyError::ZeroPolynomial));
        assert_eq!(is_squarefree(&Polynomial::zero(2)), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn perfect_root_of_quadric_power() {
        let q = p("x1^2 + x2^2 + x3^2");
        let f = q.pow(3).scale(&BigRational::from_integer(5.into()));
        assert_eq!(perfect_root(&f, 3), Some(q.clone()));
        assert_eq!(perfect_root(&f, 2), None);
        let ff = squarefree_decomposition(&f).unwrap();
        assert_eq!(ff.factors, vec![(q, 3)]);
    }

    #[test]
    fn perfect_root_when_leading_slice_is_not_constant() {
        let d = p("x1*x4 - x2*x3");
        assert_eq!(perfect_root(&d.pow(4), 4), Some(d.clone()));
        assert_eq!(perfect_root(&d.pow(4), 2), Some(d.pow(2)));
    }

    #[test]
    fn block_separation_on_disjoint_product() {
        let d = p("x1*x4 - x2*x3").embed(7, 0).unwrap();
        let q = p("x1^2 + x2^2 + x3^2").embed(7, 4).unwrap();
        let f = &d.pow(2) * &q.pow(3);
        let blocks = separate_blocks(&f);
        assert_eq!(blocks.len(), 2);
        let ff = squarefree_decomposition(&f).unwrap();
        assert_eq!(ff.factors, vec![(d, 2), (q, 3)]);
    }

    #[test]
    fn mixed_multiplicities_share_variables() {
        let a = p("x1 + x2 + 0*x3");
        let b = p("x2 - 3*x3");
        let c = p("x1*x3 + x2^2");
        let f = &(&a * &b.pow(2)) * &c.pow(3);
        let ff = squarefree_decomposition(&f).unwrap();
        assert_eq!(ff.expand(3), f);
        assert_eq!(ff.multiplicities(), vec![1, 2, 3]);
    }
}
