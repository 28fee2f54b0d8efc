//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! The polynomial is viewed as univariate in a main variable with
//! coefficients in the remaining ones. Contents are split off recursively;
//! variables that occur in only one operand are eliminated by taking the
//! content in that variable first, which shrinks the problem quickly.

use super::Polynomial;

/// Greatest common divisor, normalized primitive with positive leading
/// coefficient. `gcd(p, 0)` is the normalized `p`; `gcd(0, 0)` is zero.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars().max(q.nvars());
    let p = if p.nvars() < n { p.embed(n, 0).unwrap() } else { p.clone() };
    let q = if q.nvars() < n { q.embed(n, 0).unwrap() } else { q.clone() };
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    gcd_rec(&p, &q).normalized()
}

pub(crate) fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars();
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    if p == q {
        return p.normalized();
    }
    let sp = p.support();
    let sq = q.support();
    if let Some(&v) = sp.difference(&sq).next() {
        return gcd_rec(&content_in(p, v), q);
    }
    if let Some(&v) = sq.difference(&sp).next() {
        return gcd_rec(p, &content_in(q, v));
    }
    let v = *sp
        .iter()
        .min_by_key(|&&v| {
            let (a, b) = (p.degree_in(v), q.degree_in(v));
            (a.min(b), a.max(b))
        })
        .expect("nonconstant polynomial has support");

    let pc = p.to_univariate(v);
    let qc = q.to_univariate(v);
    let cp = content_of(&pc);
    let cq = content_of(&qc);
    let c = gcd_rec(&cp, &cq);
    let pp = divide_all(&pc, &cp);
    let qq = divide_all(&qc, &cq);
    let g = prs(pp, qq);
    Polynomial::from_univariate(n, v, &g).try_mul(&c).unwrap().normalized()
}

/// Content of `p` with respect to `var`: gcd of its coefficients.
pub(crate) fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    content_of(&p.to_univariate(var))
}

fn content_of(coeffs: &[Polynomial]) -> Polynomial {
    let mut nonzero: Vec<&Polynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    let n = coeffs[0].nvars();
    if nonzero.is_empty() {
        return Polynomial::zero(n);
    }
    // Small coefficients first keeps the running gcd cheap.
    nonzero.sort_by_key(|c| c.len());
    let mut g = nonzero[0].normalized();
    for c in &nonzero[1..] {
        if g.is_constant() {
            return Polynomial::one(n);
        }
        if g.divides(c) {
            continue;
        }
        g = gcd_rec(&g, c);
    }
    if g.is_constant() {
        Polynomial::one(n)
    } else {
        g
    }
}

fn divide_all(coeffs: &[Polynomial], d: &Polynomial) -> Vec<Polynomial> {
    coeffs
        .iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().is_some_and(Polynomial::is_zero) {
        v.pop();
    }
}

fn pseudo_remainder(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.try_mul(lb).unwrap();
        }
        for (j, bc) in b.iter().enumerate() {
            let t = lr.try_mul(bc).unwrap();
            r[shift + j] = r[shift + j].try_sub(&t).unwrap();
        }
        trim(&mut r);
    }
    r
}

fn primitive_part(v: Vec<Polynomial>) -> Vec<Polynomial> {
    let c = content_of(&v);
    let divided = if c.is_constant() { v } else { divide_all(&v, &c) };
    let k = rational_content(&divided).recip();
    divided.iter().map(|x| x.scale(&k)).collect()
}

fn rational_content(v: &[Polynomial]) -> num_rational::BigRational {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for p in v {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    num_rational::BigRational::new(num, den)
}

/// Primitive PRS on coefficient lists that are primitive in the main
/// variable and of positive degree.
fn prs(mut a: Vec<Polynomial>, mut b: Vec<Polynomial>) -> Vec<Polynomial> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let n = a[0].nvars();
    loop {
        if b.len() <= 1 {
            return vec![Polynomial::one(n)];
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![Polynomial::one(n)];
        }
        a = b;
        b = primitive_part(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(gcd(&p("x1^2 - x2^2"), &p("x1 - x2")), p("x1 - x2"));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let f = p("-2*x1 + 4*x2");
        assert_eq!(gcd(&f, &Polynomial::zero(2)), p("x1 - 2*x2"));
        assert_eq!(gcd(&Polynomial::zero(2), &f), p("x1 - 2*x2"));
    }

    #[test]
    fn coprime_inputs() {
        assert!(gcd(&p("x1 + x2"), &p("x1 - x2")).is_one());
        assert!(gcd(&p("x1*x2 + 1"), &p("x3")).is_one());
    }

    #[test]
    fn shared_multivariate_factor() {
        let p5 = |s: &str| Polynomial::parse_with_nvars(s, 5).unwrap();
        let d = p5("x1*x4 - x2*x3");
        let a = &d * &p5("x1 + x5");
        let b = &d * &p5("x2^2 - x5");
        assert_eq!(gcd(&a, &b), d);
    }

    #[test]
    fn determinant_square_against_its_derivative() {
        let d = p("x1*x4 - x2*x3");
        let d2 = d.pow(2);
        let dx = d2.partial_derivative(0).unwrap();
        assert_eq!(gcd(&d2, &dx), d);
    }
}
