//! Dense univariate polynomials over the rationals, with square-free
//! decomposition and complete factorization over `Q`.
//!
//! Factorization follows the big-prime Zassenhaus scheme: pick a prime
//! larger than twice the Mignotte bound, split modulo that prime with
//! distinct-degree and Cantor–Zassenhaus equal-degree factorization, then
//! recombine modular factors into integer factors by trial division.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::modular::{is_probable_prime, ModPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `coeffs[k]` multiplies `t^k`.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Euclidean division over `Q`.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading_coefficient().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); n - dd];
        for k in (dd..n).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            q[k - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(rem))
    }

    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Primitive integer coefficient vector with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        primitive_z(&ints)
    }

    /// Monic gcd over `Q`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let a = self.primitive_integer();
        let b = other.primitive_integer();
        let g = gcd_z(&a, &b);
        UniPoly::from_integers(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Yun's algorithm: monic square-free parts `(s_k, k)` with
    /// `self = lc * prod s_k^k`, skipping trivial parts.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.exact_div(&g).expect("gcd divides");
        let mut d = df.exact_div(&g).expect("gcd divides").sub(&c.derivative());
        let mut k = 1u32;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            c = c.exact_div(&a).expect("gcd divides");
            d = d.exact_div(&a).expect("gcd divides").sub(&c.derivative());
            k += 1;
        }
        out
    }

    /// Irreducible factors over `Q` with multiplicities, each primitive
    /// integral with positive leading coefficient.
    pub fn factor<R: RngCore>(&self, rng: &mut R) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        for (part, k) in self.squarefree_decomposition() {
            for f in factor_squarefree_z(&part.primitive_integer(), rng) {
                out.push((UniPoly::from_integers(&f), k));
            }
        }
        out
    }
}

pub(crate) fn trim_z(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn primitive_z(v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    trim_z(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

fn prem_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        trim_z(&mut r);
    }
    r
}

/// Primitive PRS gcd over `Z[t]`.
pub(crate) fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_z(a);
    let mut b = primitive_z(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem_z(&a, &b);
        if r.is_empty() {
            return b;
        }
        a = b;
        b = primitive_z(&r);
    }
}

fn exact_div_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (c, rem) = r[k].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &c * bc;
        }
        q[k - db] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim_z(&mut q);
    Some(q)
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

pub(crate) fn random_below<R: RngCore>(rng: &mut R, bound: &BigInt) -> BigInt {
    let bytes = (bound.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; bytes];
    rng.fill_bytes(&mut buf);
    BigInt::from_bytes_le(Sign::Plus, &buf) % bound
}

/// Irreducible factors of a primitive square-free integer polynomial.
pub(crate) fn factor_squarefree_z<R: RngCore>(f: &[BigInt], rng: &mut R) -> Vec<Vec<BigInt>> {
    let f = primitive_z(f);
    let deg = f.len().saturating_sub(1);
    if deg <= 1 {
        return if deg == 1 { vec![f] } else { Vec::new() };
    }
    let lc = f.last().unwrap().abs();
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = &lc * (BigInt::one() << deg) * isqrt_ceil(&norm2);
    let floor = &bound * 2 + 1;

    let p = loop {
        let mut cand = &floor + random_below(rng, &floor);
        if cand.is_even() {
            cand += 1;
        }
        if !is_probable_prime(&cand, 32, rng) || (&lc % &cand).is_zero() {
            continue;
        }
        let fp = ModPoly::from_ints(&f, &cand);
        if fp.gcd(&fp.derivative()).degree() == Some(0) {
            break cand;
        }
    };

    let fp = ModPoly::from_ints(&f, &p).monic();
    let mut modular: Vec<ModPoly> = Vec::new();
    for (g, d) in fp.distinct_degree() {
        modular.extend(g.equal_degree(d, rng));
    }

    let mut remaining = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), size) {
            let lcr = remaining.last().unwrap().clone();
            let mut g = ModPoly::constant(&lcr, &p);
            for &i in &subset {
                g = g.mul(&modular[i]);
            }
            let cand = primitive_z(&g.symmetric());
            if let Some(q) = exact_div_z(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = primitive_z(&q);
                let mut i = 0;
                modular.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    found
}

pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            done = true;
        }
        Some(current)
    })
}

/// A uniformly random integer in `[-range, range]`.
pub(crate) fn random_small<R: RngCore>(rng: &mut R, range: i64) -> BigRational {
    BigRational::from_integer(rng.random_range(-range..=range).into())
}
