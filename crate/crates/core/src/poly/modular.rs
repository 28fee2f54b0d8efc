//! Polynomials over a prime field `F_p` with arbitrary-size `p`, and the
//! word-size modular evaluator used for fast zero tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;

use super::univariate::random_below;

/// Miller–Rabin with `rounds` random bases.
pub(crate) fn is_probable_prime<R: RngCore>(n: &BigInt, rounds: usize, rng: &mut R) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for _ in 0..rounds {
        let a: BigInt = random_below(rng, &(n - 3u32)) + 2u32;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    c: Vec<BigInt>,
    p: BigInt,
}

impl ModPoly {
    fn new(mut c: Vec<BigInt>, p: &BigInt) -> Self {
        for x in c.iter_mut() {
            *x = x.mod_floor(p);
        }
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ModPoly { c, p: p.clone() }
    }

    pub fn from_ints(v: &[BigInt], p: &BigInt) -> Self {
        Self::new(v.to_vec(), p)
    }

    pub fn constant(c: &BigInt, p: &BigInt) -> Self {
        Self::new(vec![c.clone()], p)
    }

    fn x(p: &BigInt) -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()], p)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2), &self.p)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|k| self.c.get(k).unwrap_or(&z) - o.c.get(k).unwrap_or(&z))
                .collect(),
            &self.p,
        )
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::new(Vec::new(), &self.p);
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, &self.p)
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let dd = d.degree().expect("division by zero");
        let inv = self.inv(d.c.last().unwrap());
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(Vec::new(), &self.p), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = (&r[k] * &inv).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k - dd + j] = (&r[k - dd + j] - &c * dc).mod_floor(&self.p);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q, &self.p), Self::new(r, &self.p))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> ModPoly {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let inv = self.inv(l);
                Self::new(self.c.iter().map(|x| x * &inv).collect(), &self.p)
            }
        }
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * BigInt::from(k))
                .collect(),
            &self.p,
        )
    }

    fn powmod(&self, e: &BigInt, m: &ModPoly) -> ModPoly {
        let mut result = Self::constant(&BigInt::one(), &self.p);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Coefficients lifted to the symmetric range `(-p/2, p/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.p >> 1;
        self.c
            .iter()
            .map(|x| if x > &half { x - &self.p } else { x.clone() })
            .collect()
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Self::x(&self.p);
        let mut h = x.clone();
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = h.powmod(&self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = f.degree() {
            if d > 0 {
                out.push((f.monic(), d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
    pub fn equal_degree<R: RngCore>(&self, d: usize, rng: &mut R) -> Vec<ModPoly> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.monic()];
        }
        let exp = (num_traits::pow(self.p.clone(), d) - 1) / 2;
        let one = Self::constant(&BigInt::one(), &self.p);
        loop {
            let a = Self::new((0..n).map(|_| random_below(rng, &self.p)).collect(), &self.p);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = a.powmod(&exp, self).sub(&one);
            let g = self.gcd(&b);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }
}

/// Word-size prime for fast probabilistic zero tests.
pub(crate) const WORD_PRIME: u64 = 0x1fff_ffff_ffff_ffff; // 2^61 - 1

pub(crate) fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % WORD_PRIME as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= WORD_PRIME {
        s - WORD_PRIME
    } else {
        s
    }
}

pub(crate) fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + WORD_PRIME - b
    }
}

pub(crate) fn powmod_word(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Reduces a rational into `F_p`; `None` if the denominator vanishes.
pub(crate) fn rational_to_word(c: &num_rational::BigRational) -> Option<u64> {
    if c.denom().is_one() {
        if let Some(n) = num_traits::ToPrimitive::to_i64(c.numer()) {
            return Some(n.rem_euclid(WORD_PRIME as i64) as u64);
        }
    }
    let p = BigInt::from(WORD_PRIME);
    let n = c.numer().mod_floor(&p);
    let d = c.denom().mod_floor(&p);
    if d.is_zero() {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    let d: u64 = d.try_into().ok()?;
    Some(mulmod(n, powmod_word(d, WORD_PRIME - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64), 20, &mut rng));
        assert!(!is_probable_prime(&BigInt::from(1_000_000_007u64 * 3), 20, &mut rng));
        // Carmichael number.
        assert!(!is_probable_prime(&BigInt::from(561), 20, &mut rng));
    }

    #[test]
    fn splits_quadratic_mod_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = BigInt::from(101);
        // x^2 - 1 = (x-1)(x+1)
        let f = ModPoly::from_ints(&[BigInt::from(-1), BigInt::zero(), BigInt::one()], &p);
        let dd = f.distinct_degree();
        assert_eq!(dd.len(), 1);
        assert_eq!(dd[0].1, 1);
        let parts = dd[0].0.equal_degree(1, &mut rng);
        assert_eq!(parts.len(), 2);
    }
}
