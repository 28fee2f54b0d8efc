//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under the graded
//! lexicographic order, so two equal polynomials always serialize to the same
//! text. Zero coefficients are never stored.
//!
//! Besides ring arithmetic the module houses the gcd machinery
//! ([`gcd`]), square-free decomposition ([`squarefree_decomposition`]),
//! variable-block separation ([`variable_blocks`]) and a restriction-based
//! irreducibility test ([`irreducibility_check`]).

mod blocks;
mod gcd;
mod irreducible;
mod linsolve;
mod modular;
mod monomial;
mod parse;
mod squarefree;
pub mod univariate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

pub use blocks::{variable_blocks, VariableBlock};
pub use gcd::gcd;
pub use irreducible::{essential_variables, irreducibility_check, Irreducibility, ReducibleWitness};
pub use monomial::Monomial;
pub use squarefree::{is_squarefree, squarefree_decomposition, FactoredForm};
pub use univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

pub type Result<T> = std::result::Result<T, PolyError>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The variable `x_{index+1}` (indices are zero-based internally).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), BigRational::one());
        p
    }

    pub fn monomial(monomial: Monomial, coeff: BigRational) -> Self {
        let mut p = Self::zero(monomial.nvars());
        if !coeff.is_zero() {
            p.terms.insert(monomial, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::VariableCountMismatch {
                    left: nvars,
                    right: exps.len(),
                });
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (`Some(0)` for zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending term order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Zero-based indices of the variables that actually occur.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    /// `Some(k)` when every term has total degree `k`.
    pub fn is_homogeneous(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next().ok_or(PolyError::ZeroPolynomial)?;
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        // Multiply over the integers and divide by the denominators once.
        let (da, ia) = self.integer_form();
        let (db, ib) = other.integer_form();
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(ia.len().saturating_mul(ib.len()).min(1 << 22));
        for (ma, ca) in &ia {
            for (mb, cb) in &ib {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let den = da * db;
        let den_is_one = den.is_one();
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in acc {
            if c.is_zero() {
                continue;
            }
            let coeff = if den_is_one {
                BigRational::from_integer(c)
            } else {
                BigRational::new(c, den.clone())
            };
            out.terms.insert(m, coeff);
        }
        out
    }

    /// Common denominator `d` and integer coefficients `d * c`.
    fn integer_form(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = if den.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                };
                (m, v)
            })
            .collect();
        (den, terms)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        if e == 0 {
            return Polynomial::one(self.nvars);
        }
        if self.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let exps = m.exponents().iter().map(|x| x * e).collect();
            return Polynomial::monomial(Monomial::from_exponents(exps), num_traits::pow(c.clone(), e as usize));
        }
        if self.has_disjoint_terms() {
            return self.multinomial_pow(e);
        }
        // Repeated multiplication by a short base beats squaring: each step
        // costs |result| * |base| instead of |result|^2.
        if self.len() <= 64 {
            let mut acc = self.clone();
            for _ in 1..e {
                acc = acc.mul_unchecked(self);
            }
            return acc;
        }
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        let mut k = e;
        loop {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul_unchecked(&base);
        }
        acc
    }

    /// True when no variable occurs in two different terms.
    fn has_disjoint_terms(&self) -> bool {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (v, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    if seen[v] {
                        return false;
                    }
                    seen[v] = true;
                }
            }
        }
        true
    }

    /// `self^e` by the multinomial theorem; every composition of `e` gives a
    /// distinct monomial when the terms share no variable.
    fn multinomial_pow(&self, e: u32) -> Polynomial {
        // Ordered by smallest variable, the first term's exponent decides lex
        // order; a homogeneous base then yields the terms already sorted.
        let mut base: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        base.sort_by_key(|(m, _)| m.exponents().iter().position(|&x| x > 0).unwrap_or(usize::MAX));
        let e = e as usize;
        let powers = |f: &dyn Fn(&BigRational) -> BigInt| -> Vec<Vec<BigInt>> {
            base.iter()
                .map(|(_, c)| {
                    let c = f(c);
                    let mut v = vec![BigInt::one()];
                    for k in 1..=e {
                        let next = &v[k - 1] * &c;
                        v.push(next);
                    }
                    v
                })
                .collect()
        };
        let nums = powers(&|c| c.numer().clone());
        let dens = powers(&|c| c.denom().clone());
        let integral = base.iter().all(|(_, c)| c.denom().is_one());
        // binom[n][x] = C(n, x)
        let mut binom: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=e {
            let prev = &binom[n - 1];
            let row = (0..=n)
                .map(|x| match x {
                    0 => BigInt::one(),
                    x if x == n => BigInt::one(),
                    x => &prev[x - 1] + &prev[x],
                })
                .collect();
            binom.push(row);
        }
        struct Walk<'a> {
            base: &'a [(&'a Monomial, &'a BigRational)],
            nums: &'a [Vec<BigInt>],
            dens: &'a [Vec<BigInt>],
            binom: &'a [Vec<BigInt>],
            integral: bool,
            exps: Vec<u32>,
            out: Vec<(Monomial, BigRational)>,
        }
        impl Walk<'_> {
            // Chooses the exponent of term i with `left` still to distribute;
            // num/den carry the coefficient of the terms chosen so far.
            fn go(&mut self, i: usize, left: usize, num: &BigInt, den: &BigInt) {
                let last = i + 1 == self.base.len();
                let range = if last { left..=left } else { 0..=left };
                for x in range {
                    let num = num * &self.binom[left][x] * &self.nums[i][x];
                    let den = if self.integral { den.clone() } else { den * &self.dens[i][x] };
                    let m = self.base[i].0.exponents();
                    for (v, &y) in m.iter().enumerate() {
                        self.exps[v] += y * x as u32;
                    }
                    if last {
                        let c = if self.integral { BigRational::from_integer(num) } else { BigRational::new(num, den) };
                        self.out.push((Monomial::from_exponents(self.exps.clone()), c));
                    } else {
                        self.go(i + 1, left - x, &num, &den);
                    }
                    for (v, &y) in m.iter().enumerate() {
                        self.exps[v] -= y * x as u32;
                    }
                }
            }
        }
        let mut walk = Walk {
            base: &base,
            nums: &nums,
            dens: &dens,
            binom: &binom,
            integral,
            exps: vec![0; self.nvars],
            out: Vec::new(),
        };
        walk.go(0, e, &BigInt::one(), &BigInt::one());
        let out = walk.out;
        Polynomial { nvars: self.nvars, terms: out.into_iter().collect() }
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            out.terms
                .insert(m.with_exponent(var, e - 1), c * BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation at a complex point.
    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= x.powu(e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces every variable `x_i` by `images[i]`; the result lives in the
    /// images' variable space.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        for p in images {
            if p.nvars != target {
                return Err(PolyError::VariableCountMismatch {
                    left: target,
                    right: p.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Substitutes a rational value for one variable, keeping the variable count.
    pub fn substitute_value(&self, var: usize, value: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        let mut powers = vec![BigRational::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exponent(var, 0), c * &powers[e]);
        }
        out
    }

    /// Re-indexes into `nvars` variables, sending `x_i` to `x_{i + offset}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Result<Polynomial> {
        if offset + self.nvars > nvars {
            return Err(PolyError::VariableCountMismatch {
                left: offset + self.nvars,
                right: nvars,
            });
        }
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(m.exponents());
            out.terms.insert(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variables: `x_i` goes to `x_{map[i]}` in a space of `nvars`.
    pub(crate) fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// The univariate polynomial `t -> p(a + t b)`.
    pub fn restrict_to_line(&self, base: &[BigRational], direction: &[BigRational]) -> Result<UniPoly> {
        if base.len() != self.nvars || direction.len() != self.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: base.len().min(direction.len()),
            });
        }
        let lines: Vec<UniPoly> = base
            .iter()
            .zip(direction)
            .map(|(a, b)| UniPoly::from_coeffs(vec![a.clone(), b.clone()]))
            .collect();
        let mut cache: Vec<Vec<UniPoly>> = lines.iter().map(|l| vec![UniPoly::one(), l.clone()]).collect();
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&lines[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Rational content: the positive rational `c` with `self / c` integral and
    /// of coefficient gcd 1.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            if !num.is_one() {
                num = num.gcd(c.numer());
            }
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        BigRational::new(num, den)
    }

    /// Splits `self = c * q` with `q` integral, primitive and with positive
    /// leading coefficient.
    pub fn primitive(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    pub fn normalized(&self) -> Polynomial {
        self.primitive().1
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `k`
    /// multiplies `var^k` and does not involve `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let e = m.exponent(var);
                out.add_term(m.with_exponent(var, e + k as u32), v.clone());
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() || self.nvars != divisor.nvars {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut rem = self.terms.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.checked_div(&lm)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                let tm = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(tm) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.terms.insert(qm, qc);
        }
        Some(quotient)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.exact_div(self).is_some()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    _ => factors.push(format!("x{}^{}", v + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the variable counts differ; use the `try_` form
            /// for fallible arithmetic.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial variable count mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Shorthand for integer rationals.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
