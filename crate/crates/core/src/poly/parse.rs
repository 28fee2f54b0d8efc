//! Text grammar: terms joined by `+`/`-`, each term a `*`-joined product of
//! rational coefficients `a/b` and powers `x<i>^<e>`. Whitespace is ignored.
//! Parenthesized groups with an optional power, `(x1 - x2)^2`, are accepted
//! on input and expanded.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

/// Parsed expression; evaluated once the variable count is known.
#[derive(Debug)]
enum Node {
    Const(BigRational),
    Var(usize, u32),
    Sum(Vec<(bool, Node)>),
    Product(Vec<Node>),
    Pow(Box<Node>, u32),
}

impl Node {
    fn max_var(&self) -> usize {
        match self {
            Node::Const(_) => 0,
            Node::Var(i, _) => i + 1,
            Node::Sum(ts) => ts.iter().map(|(_, t)| t.max_var()).max().unwrap_or(0),
            Node::Product(fs) => fs.iter().map(Node::max_var).max().unwrap_or(0),
            Node::Pow(b, _) => b.max_var(),
        }
    }

    fn eval(&self, n: usize) -> Polynomial {
        match self {
            Node::Const(c) => Polynomial::constant(n, c.clone()),
            Node::Var(i, e) => {
                let mut exps = vec![0u32; n];
                exps[*i] = *e;
                Polynomial::monomial(Monomial::from_exponents(exps), BigRational::one())
            }
            Node::Sum(ts) => {
                let mut acc = Polynomial::zero(n);
                for (neg, t) in ts {
                    let v = t.eval(n);
                    acc = if *neg { &acc - &v } else { &acc + &v };
                }
                acc
            }
            Node::Product(fs) => fs.iter().fold(Polynomial::one(n), |acc, f| &acc * &f.eval(n)),
            Node::Pow(b, e) => b.eval(n).pow(*e),
        }
    }
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let d = self.digits()?;
        match d.try_into() {
            Ok(v) => Ok(v),
            Err(_) => self.err("exponent too large"),
        }
    }

    fn factor(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                let idx = self.digits()?;
                let idx: usize = match idx.try_into() {
                    Ok(i) if i >= 1 => i,
                    _ => return self.err("variable index must be >= 1"),
                };
                Ok(Node::Var(idx - 1, self.exponent()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(if e == 1 { inner } else { Node::Pow(Box::new(inner), e) })
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Node::Const(value))
            }
            Some(_) => self.err("expected coefficient, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Node::Product(fs) })
    }

    fn sum(&mut self) -> Result<Node> {
        let mut out = Vec::new();
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                neg = true;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        out.push((neg, self.term()?));
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    out.push((false, self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    out.push((true, self.term()?));
                }
                _ => return Ok(Node::Sum(out)),
            }
        }
    }

    fn document(mut self) -> Result<Node> {
        let node = self.sum()?;
        match self.peek() {
            None => Ok(node),
            Some(_) => self.err("expected '+', '-' or end of input"),
        }
    }
}

impl Polynomial {
    /// Parses with an explicit variable count; indices above `nvars` are an
    /// error.
    pub fn parse_with_nvars(s: &str, nvars: usize) -> Result<Polynomial> {
        let node = Cursor { bytes: s.as_bytes(), pos: 0 }.document()?;
        let inferred = node.max_var();
        if inferred > nvars {
            return Err(PolyError::VariableOutOfRange { index: inferred, nvars });
        }
        Ok(node.eval(nvars))
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Infers the variable count as the largest index that appears.
    fn from_str(s: &str) -> Result<Polynomial> {
        let node = Cursor { bytes: s.as_bytes(), pos: 0 }.document()?;
        Ok(node.eval(node.max_var().max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn parses_grammar_example() {
        let p: Polynomial = "3/2*x1^2*x2 - x3^3".parse().unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3^3");
    }

    #[test]
    fn whitespace_and_merging() {
        let p: Polynomial = " x1 * x2 +  2 * x2*x1 - 3 ".parse().unwrap();
        assert_eq!(p.to_string(), "3*x1*x2 - 3");
    }

    #[test]
    fn explicit_variable_count() {
        let p = Polynomial::parse_with_nvars("x2", 5).unwrap();
        assert_eq!(p.nvars(), 5);
        assert!(Polynomial::parse_with_nvars("x6", 5).is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "x0", "x1 +", "2/0*x1", "x1 ** x2", "y1", "x1 x2", "(x1", "x1)", "()"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad}");
        }
    }

    #[test]
    fn groups_expand() {
        let p: Polynomial = "2*(x1 - x2)^2 + x3".parse().unwrap();
        assert_eq!(p.to_string(), "2*x1^2 - 4*x1*x2 + 2*x2^2 + x3");
        let q: Polynomial = "-(x1*x4 - x2*x3)^2".parse().unwrap();
        assert_eq!(q.total_degree(), Some(4));
    }

    #[test]
    fn constants() {
        let p: Polynomial = "-7/3".parse().unwrap();
        assert_eq!(p.constant_value(), Some(rat(-7) / rat(3)));
        assert_eq!(p.to_string(), "-7/3");
    }
}
