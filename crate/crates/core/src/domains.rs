//! Irreducible tube-type bounded symmetric domains, their (rank, dimension)
//! table and the arithmetic conditions relating norms, exponents and twists.
//!
//! Low-dimensional coincidences are resolved to a single representative:
//!
//! | (r, d) | representative | also           |
//! |--------|----------------|----------------|
//! | (1, 1) | `I_{1,1}`      | `III_1`, `II_2`|
//! | (2, 3) | `IV_3`         | `III_2`        |
//! | (2, 4) | `I_{2,2}`      | `IV_4`         |
//! | (2, 6) | `II_4`         | `IV_6`         |

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("invalid domain parameter: {0}")]
    InvalidParameter(String),
    #[error("empty factor list")]
    EmptyFactorList,
    #[error("exponent m*n/r = {m}*{dim}/{rank} is not an integer")]
    NonIntegralExponent { m: u32, dim: u32, rank: u32 },
    #[error("cannot parse domain '{0}'")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, DomainError>;

/// Cartan family with its size parameter. `TypeII` carries the matrix size
/// `2k`, `TypeIV` the complex dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    TypeI(u32),
    TypeII(u32),
    TypeIII(u32),
    TypeIV(u32),
    Exceptional27,
}

impl DomainKind {
    fn tag(&self) -> u8 {
        match self {
            DomainKind::TypeI(_) => 1,
            DomainKind::TypeII(_) => 2,
            DomainKind::TypeIII(_) => 3,
            DomainKind::TypeIV(_) => 4,
            DomainKind::Exceptional27 => 5,
        }
    }
}

pub fn rank_dim(kind: DomainKind) -> Result<(u32, u32)> {
    let bad = |s: String| Err(DomainError::InvalidParameter(s));
    match kind {
        DomainKind::TypeI(n) if n >= 1 => Ok((n, n * n)),
        DomainKind::TypeII(s) if s >= 2 && s % 2 == 0 => {
            let k = s / 2;
            Ok((k, k * (2 * k - 1)))
        }
        DomainKind::TypeIII(n) if n >= 1 => Ok((n, n * (n + 1) / 2)),
        DomainKind::TypeIV(d) if d >= 3 => Ok((2, d)),
        DomainKind::Exceptional27 => Ok((3, 27)),
        DomainKind::TypeI(n) => bad(format!("I_{{{n},{n}}} needs n >= 1")),
        DomainKind::TypeII(s) => bad(format!("II_{s} needs an even size >= 2")),
        DomainKind::TypeIII(n) => bad(format!("III_{n} needs n >= 1")),
        DomainKind::TypeIV(d) => bad(format!("IV_{d} needs d >= 3")),
    }
}

/// Irreducible tube-type domain with its derived rank and dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IrreducibleDomain {
    pub kind: DomainKind,
    pub rank: u32,
    pub dim: u32,
}

impl IrreducibleDomain {
    pub fn new(kind: DomainKind) -> Result<Self> {
        let (rank, dim) = rank_dim(kind)?;
        Ok(IrreducibleDomain { kind, rank, dim })
    }

    pub fn disk() -> Self {
        IrreducibleDomain { kind: DomainKind::TypeI(1), rank: 1, dim: 1 }
    }

    pub fn is_disk(&self) -> bool {
        self.rank == 1
    }

    /// The representative with the same (rank, dim).
    pub fn canonical(&self) -> Self {
        lookup(self.rank, self.dim).expect("every table entry has a representative")
    }

    fn sort_key(&self) -> (u32, u32, u8, u32) {
        let param = match self.kind {
            DomainKind::TypeI(p) | DomainKind::TypeII(p) | DomainKind::TypeIII(p) | DomainKind::TypeIV(p) => p,
            DomainKind::Exceptional27 => 27,
        };
        (self.rank, self.dim, self.kind.tag(), param)
    }
}

impl PartialOrd for IrreducibleDomain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IrreducibleDomain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for IrreducibleDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::TypeI(n) => write!(f, "I_{{{n},{n}}}"),
            DomainKind::TypeII(s) => write!(f, "II_{s}"),
            DomainKind::TypeIII(n) => write!(f, "III_{n}"),
            DomainKind::TypeIV(d) => write!(f, "IV_{d}"),
            DomainKind::Exceptional27 => write!(f, "E27"),
        }
    }
}

impl FromStr for IrreducibleDomain {
    type Err = DomainError;

    /// Accepts the Cartan names (`I_{2,2}`, `II_4`, `III_3`, `IV_5`, `E27`)
    /// and `H` for the disk.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || DomainError::Parse(s.to_string());
        if t == "H" || t == "D" {
            return Ok(Self::disk());
        }
        if t == "E27" || t == "E_27" || t == "EVII" {
            return Self::new(DomainKind::Exceptional27);
        }
        let num = |x: &str| x.parse::<u32>().map_err(|_| err());
        let kind = if let Some(rest) = t.strip_prefix("IV_") {
            DomainKind::TypeIV(num(rest)?)
        } else if let Some(rest) = t.strip_prefix("III_") {
            DomainKind::TypeIII(num(rest)?)
        } else if let Some(rest) = t.strip_prefix("II_") {
            DomainKind::TypeII(num(rest)?)
        } else if let Some(rest) = t.strip_prefix("I_") {
            let inner = rest.trim_start_matches('{').trim_end_matches('}');
            let (a, b) = inner.split_once(',').unwrap_or((inner, inner));
            let (a, b) = (num(a)?, num(b)?);
            if a != b {
                return Err(DomainError::InvalidParameter(format!("I_{{{a},{b}}} is not of tube type")));
            }
            DomainKind::TypeI(a)
        } else {
            return Err(err());
        };
        Self::new(kind)
    }
}

impl Serialize for IrreducibleDomain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IrreducibleDomain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Product of irreducible factors, canonicalized and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainProduct {
    factors: Vec<IrreducibleDomain>,
}

impl DomainProduct {
    pub fn new(factors: impl IntoIterator<Item = IrreducibleDomain>) -> Self {
        let mut factors: Vec<IrreducibleDomain> = factors.into_iter().map(|f| f.canonical()).collect();
        factors.sort();
        DomainProduct { factors }
    }

    pub fn polydisk(n: u32) -> Self {
        DomainProduct { factors: vec![IrreducibleDomain::disk(); n as usize] }
    }

    pub fn factors(&self) -> &[IrreducibleDomain] {
        &self.factors
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().map(|f| f.dim).sum()
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_polydisk(&self) -> bool {
        self.factors.iter().all(IrreducibleDomain::is_disk)
    }
}

impl fmt::Display for DomainProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" × "))
    }
}

impl FromStr for DomainProduct {
    type Err = DomainError;

    /// `×`- or `x`-separated factors; a factor may carry a power, `H^3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(['×', '*']).flat_map(|p| p.split(" x ")) {
            let part = part.trim();
            if part.is_empty() {
                return Err(DomainError::Parse(s.to_string()));
            }
            let (base, power) = match part.rsplit_once('^') {
                Some((b, p)) if !b.ends_with('{') => {
                    (b, p.trim().parse::<u32>().map_err(|_| DomainError::Parse(s.to_string()))?)
                }
                _ => (part, 1),
            };
            let d: IrreducibleDomain = base.parse()?;
            out.extend(std::iter::repeat_n(d, power as usize));
        }
        if out.is_empty() {
            return Err(DomainError::EmptyFactorList);
        }
        Ok(DomainProduct::new(out))
    }
}

impl Serialize for DomainProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Degree bookkeeping of an invariant tensor on a product: `k = m n` and
/// `a_j r_j = m n_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorDegreeSpec {
    pub m: u32,
    pub k: u32,
    pub exponents: Vec<u32>,
}

impl TensorDegreeSpec {
    pub fn new(product: &DomainProduct, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(DomainError::InvalidParameter("m must be positive".into()));
        }
        let exponents = product
            .factors()
            .iter()
            .map(|f| {
                if (m * f.dim) % f.rank != 0 {
                    Err(DomainError::NonIntegralExponent { m, dim: f.dim, rank: f.rank })
                } else {
                    Ok(m * f.dim / f.rank)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorDegreeSpec { m, k: m * product.dim(), exponents })
    }
}

/// The canonical domain with the given rank and dimension, if any.
pub fn lookup(rank: u32, dim: u32) -> Option<IrreducibleDomain> {
    let kind = match (rank, dim) {
        (0, _) | (_, 0) => return None,
        (1, 1) => DomainKind::TypeI(1),
        (1, _) => return None,
        (2, 3) => DomainKind::TypeIV(3),
        (2, 4) => DomainKind::TypeI(2),
        (2, 6) => DomainKind::TypeII(4),
        (2, d) if d >= 5 => DomainKind::TypeIV(d),
        (2, _) => return None,
        (3, 27) => DomainKind::Exceptional27,
        (r, d) if d == r * r => DomainKind::TypeI(r),
        (r, d) if d == r * (2 * r - 1) => DomainKind::TypeII(2 * r),
        (r, d) if 2 * d == r * (r + 1) => DomainKind::TypeIII(r),
        _ => return None,
    };
    IrreducibleDomain::new(kind).ok()
}

/// Every canonical domain with `r | d` and `d <= max_dim`, ordered by
/// (rank, dim).
pub fn enumerate_divisible(max_dim: u32) -> Vec<IrreducibleDomain> {
    let mut out = Vec::new();
    for r in 1..=max_dim {
        for d in (r..=max_dim).step_by(r as usize) {
            if let Some(x) = lookup(r, d) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Every canonical domain with `d <= max_dim`, divisible or not.
pub fn enumerate_all(max_dim: u32) -> Vec<IrreducibleDomain> {
    let mut out = Vec::new();
    for r in 1..=max_dim {
        for d in r..=max_dim {
            if let Some(x) = lookup(r, d) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Least `m` with `r_j | m n_j` for all factors, and the exponents
/// `a_j = m n_j / r_j`.
pub fn minimal_m(factors: &[(u32, u32)]) -> Result<(u32, Vec<u32>)> {
    if factors.is_empty() {
        return Err(DomainError::EmptyFactorList);
    }
    let mut m = 1u32;
    for &(r, n) in factors {
        if r == 0 || n == 0 {
            return Err(DomainError::InvalidParameter(format!("({r},{n})")));
        }
        m = m.lcm(&(r / r.gcd(&n)));
    }
    Ok((m, factors.iter().map(|&(r, n)| m * n / r).collect()))
}

/// Non-negative `(a, b)` with `4a + 6b = n` and `a + b = p`: `a` factors
/// `I_{2,2}` and `b` factors `III_3`.
pub fn solve_prop61(n: u32, p: u32) -> Option<(u32, u32)> {
    let rest = n.checked_sub(4 * p)?;
    if rest % 2 != 0 {
        return None;
    }
    let b = rest / 2;
    let a = p.checked_sub(b)?;
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(s: &str) -> IrreducibleDomain {
        s.parse().unwrap()
    }

    #[test]
    fn table_rows() {
        assert_eq!(rank_dim(DomainKind::TypeI(3)), Ok((3, 9)));
        assert_eq!(rank_dim(DomainKind::TypeII(8)), Ok((4, 28)));
        assert_eq!(rank_dim(DomainKind::Exceptional27), Ok((3, 27)));
        assert!(rank_dim(DomainKind::TypeII(5)).is_err());
        assert!(rank_dim(DomainKind::TypeIV(2)).is_err());
    }

    #[test]
    fn lookup_examples() {
        assert_eq!(lookup(1, 1), Some(IrreducibleDomain::disk()));
        assert_eq!(lookup(3, 27).unwrap().kind, DomainKind::Exceptional27);
        assert_eq!(lookup(3, 5), None);
        assert_eq!(lookup(2, 2), None);
        assert_eq!(lookup(1, 2), None);
    }

    #[test]
    fn enumerate_examples() {
        let names = |v: Vec<IrreducibleDomain>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(names(enumerate_divisible(1)), ["I_{1,1}"]);
        assert_eq!(names(enumerate_divisible(4)), ["I_{1,1}", "I_{2,2}"]);
        assert_eq!(names(enumerate_divisible(6)), ["I_{1,1}", "I_{2,2}", "II_4", "III_3"]);
    }

    #[test]
    fn minimal_m_examples() {
        assert_eq!(minimal_m(&[(1, 1)]), Ok((1, vec![1])));
        assert_eq!(minimal_m(&[(2, 3)]), Ok((2, vec![3])));
        assert_eq!(minimal_m(&[(2, 4), (3, 6)]), Ok((1, vec![2, 2])));
        assert_eq!(minimal_m(&[]), Err(DomainError::EmptyFactorList));
    }

    #[test]
    fn prop61_examples() {
        assert_eq!(solve_prop61(10, 2), Some((1, 1)));
        assert_eq!(solve_prop61(8, 2), Some((2, 0)));
        assert_eq!(solve_prop61(7, 1), None);
    }

    #[test]
    fn names_round_trip() {
        for s in ["I_{1,1}", "I_{3,3}", "II_4", "III_3", "IV_7", "E27"] {
            assert_eq!(dom(s).to_string(), s);
        }
        assert_eq!(dom("H"), IrreducibleDomain::disk());
        assert!("I_{2,3}".parse::<IrreducibleDomain>().is_err());
    }

    #[test]
    fn product_display_and_parse() {
        let p: DomainProduct = "III_3 × I_{2,2}".parse().unwrap();
        assert_eq!(p.to_string(), "I_{2,2} × III_3");
        assert_eq!(p.dim(), 10);
        let q: DomainProduct = "H^3".parse().unwrap();
        assert!(q.is_polydisk());
        assert_eq!(q.dim(), 3);
        let r: DomainProduct = "IV_4 x IV_6".parse().unwrap();
        assert_eq!(r.to_string(), "I_{2,2} × II_4");
    }

    #[test]
    fn tensor_degrees() {
        let p: DomainProduct = "IV_3".parse().unwrap();
        assert!(TensorDegreeSpec::new(&p, 1).is_err());
        let t = TensorDegreeSpec::new(&p, 2).unwrap();
        assert_eq!((t.k, t.exponents.clone()), (6, vec![3]));
    }
}
