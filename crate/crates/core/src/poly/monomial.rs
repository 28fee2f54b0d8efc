use std::fmt;

/// Exponent vector of a monomial, ordered graded-lexicographically with
/// `x1 > x2 > ... > xn`. The total degree is cached so the derived order
/// compares it first.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial { degree: 1, exps: e }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { degree: exponents.iter().sum(), exps: exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps: out })
    }

    pub fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.exps.clone();
        let degree = self.degree - m[var] + e;
        m[var] = e;
        Monomial { degree, exps: m }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}
