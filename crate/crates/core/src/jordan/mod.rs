//! The five simple Euclidean Jordan algebras, complexified.
//!
//! Coordinates (the fixed basis of `V_C`):
//!
//! * `sym:n`: entries `z_ij`, `i <= j`, row-major; product `(XY + YX)/2`.
//! * `herm:n`: all `n x n` entries row-major; product `(XY + YX)/2`.
//! * `quat:k`: entries `z_ij`, `i < j`, of a skew `2k x 2k` matrix `A`;
//!   product `(A J^-1 B + B J^-1 A)/2` with `J` the standard symplectic
//!   form, unit `J`, norm the Pfaffian.
//! * `spin:d`: `(s, u_1..u_{d-1})`; product `(st + <u,v>, sv + tu)`.
//! * `albert`: `(a, b, c, u, v, w)` for the octonionic Hermitian matrix
//!   `[[a, w, conj v], [conj w, b, u], [v, conj u, c]]`.
//!
//! Every norm satisfies `det(e) = 1`. The spin-factor norm `s^2 - <u,u>` is
//! emitted as the polynomial `x1^2 + ... + xd^2` through `x1 = s`,
//! `x_{j+1} = i u_j`; [`polynomial_coordinates`] applies that change.

mod norm;
pub mod octonion;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::domains::{DomainKind, IrreducibleDomain};
use crate::linalg::{c, cgauss, pfaffian, rgauss, CMatrix, CVector, I};

pub use norm::koecher_norm_polynomial;
pub use verify::{verify_jordan_identities, verify_jordan_identities_with_step, IdentityRecord, JordanReport};

pub const SINGULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JordanError {
    #[error("elements belong to different algebras: {0} vs {1}")]
    SpecMismatch(JordanAlgebraSpec, JordanAlgebraSpec),
    #[error("singular element: |det| = {0:e}")]
    Singular(f64),
    #[error("invalid algebra: {0}")]
    InvalidSpec(String),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, JordanError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    RealSymmetric(usize),
    HermitianComplex(usize),
    HermitianQuaternion(usize),
    SpinFactor(usize),
    Albert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JordanAlgebraSpec {
    pub family: Family,
}

impl JordanAlgebraSpec {
    pub fn new(family: Family) -> Result<Self> {
        let ok = match family {
            Family::RealSymmetric(n) | Family::HermitianComplex(n) | Family::HermitianQuaternion(n) => n >= 1,
            Family::SpinFactor(d) => d >= 3,
            Family::Albert => true,
        };
        if ok {
            Ok(JordanAlgebraSpec { family })
        } else {
            Err(JordanError::InvalidSpec(format!("{family:?}")))
        }
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::RealSymmetric(n) | Family::HermitianComplex(n) | Family::HermitianQuaternion(n) => n,
            Family::SpinFactor(_) => 2,
            Family::Albert => 3,
        }
    }

    /// Complex dimension of `V_C`, equal to the real dimension of `V`.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::RealSymmetric(n) => n * (n + 1) / 2,
            Family::HermitianComplex(n) => n * n,
            Family::HermitianQuaternion(k) => k * (2 * k - 1),
            Family::SpinFactor(d) => d,
            Family::Albert => 27,
        }
    }

    pub fn real_dim(&self) -> usize {
        self.dim()
    }

    /// `2n/r`, the exponent in `Det P(x) = det(x)^(2n/r)`.
    pub fn quadratic_exponent(&self) -> u32 {
        (2 * self.dim() / self.rank()) as u32
    }

    pub fn domain(&self) -> IrreducibleDomain {
        let kind = match self.family {
            Family::RealSymmetric(n) => DomainKind::TypeIII(n as u32),
            Family::HermitianComplex(n) => DomainKind::TypeI(n as u32),
            Family::HermitianQuaternion(k) => DomainKind::TypeII(2 * k as u32),
            Family::SpinFactor(d) => DomainKind::TypeIV(d as u32),
            Family::Albert => DomainKind::Exceptional27,
        };
        IrreducibleDomain::new(kind).expect("valid spec maps to a valid domain")
    }

    /// The algebra whose tube realizes `domain` (not canonicalized: `IV_4`
    /// gives `spin:4`, `I_{2,2}` gives `herm:2`).
    pub fn from_domain(domain: &IrreducibleDomain) -> Self {
        let family = match domain.kind {
            DomainKind::TypeI(n) => Family::HermitianComplex(n as usize),
            DomainKind::TypeII(s) => Family::HermitianQuaternion(s as usize / 2),
            DomainKind::TypeIII(n) => Family::RealSymmetric(n as usize),
            DomainKind::TypeIV(d) => Family::SpinFactor(d as usize),
            DomainKind::Exceptional27 => Family::Albert,
        };
        JordanAlgebraSpec { family }
    }

    /// Side length of the representative matrix, if a matrix family.
    fn matrix_size(&self) -> Option<usize> {
        match self.family {
            Family::RealSymmetric(n) | Family::HermitianComplex(n) => Some(n),
            Family::HermitianQuaternion(k) => Some(2 * k),
            _ => None,
        }
    }
}

impl fmt::Display for JordanAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::RealSymmetric(n) => write!(f, "sym:{n}"),
            Family::HermitianComplex(n) => write!(f, "herm:{n}"),
            Family::HermitianQuaternion(k) => write!(f, "quat:{k}"),
            Family::SpinFactor(d) => write!(f, "spin:{d}"),
            Family::Albert => write!(f, "albert"),
        }
    }
}

impl FromStr for JordanAlgebraSpec {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "albert" {
            return Self::new(Family::Albert);
        }
        let bad = || JordanError::InvalidSpec(s.to_string());
        let (name, param) = s.split_once(':').ok_or_else(bad)?;
        let p: usize = param.parse().map_err(|_| bad())?;
        let family = match name {
            "sym" => Family::RealSymmetric(p),
            "herm" => Family::HermitianComplex(p),
            "quat" => Family::HermitianQuaternion(p),
            "spin" => Family::SpinFactor(p),
            _ => return Err(bad()),
        };
        Self::new(family)
    }
}

impl Serialize for JordanAlgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement {
    pub spec: JordanAlgebraSpec,
    pub coords: CVector,
}

impl Serialize for JordanElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("JordanElement", 2)?;
        st.serialize_field("spec", &self.spec)?;
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("coords", &pairs)?;
        st.end()
    }
}

/// Operator matrix of `P(x)` in the coordinate basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticRep {
    pub spec: JordanAlgebraSpec,
    pub matrix: CMatrix,
}

impl QuadraticRep {
    pub fn apply(&self, y: &JordanElement) -> Result<JordanElement> {
        same_spec(&self.spec, &y.spec)?;
        Ok(JordanElement { spec: self.spec, coords: &self.matrix * &y.coords })
    }
}

fn same_spec(a: &JordanAlgebraSpec, b: &JordanAlgebraSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(JordanError::SpecMismatch(*a, *b))
    }
}

/// Standard symplectic form `diag([[0,1],[-1,0]], ...)`.
fn symplectic(k: usize) -> CMatrix {
    let mut j = CMatrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        j[(2 * b, 2 * b + 1)] = c(1.0);
        j[(2 * b + 1, 2 * b)] = c(-1.0);
    }
    j
}

impl JordanElement {
    pub fn new(spec: JordanAlgebraSpec, coords: CVector) -> Result<Self> {
        if coords.len() != spec.dim() {
            return Err(JordanError::Dimension { expected: spec.dim(), got: coords.len() });
        }
        Ok(JordanElement { spec, coords })
    }

    pub fn from_slice(spec: JordanAlgebraSpec, coords: &[Complex64]) -> Result<Self> {
        Self::new(spec, CVector::from_column_slice(coords))
    }

    pub fn zero(spec: JordanAlgebraSpec) -> Self {
        JordanElement { spec, coords: CVector::zeros(spec.dim()) }
    }

    /// Representative matrix of a matrix-family element.
    pub fn to_matrix(&self) -> Option<CMatrix> {
        let z = &self.coords;
        match self.spec.family {
            Family::RealSymmetric(n) => {
                let mut m = CMatrix::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m[(i, j)] = z[k];
                        m[(j, i)] = z[k];
                        k += 1;
                    }
                }
                Some(m)
            }
            Family::HermitianComplex(n) => Some(CMatrix::from_row_slice(n, n, z.as_slice())),
            Family::HermitianQuaternion(k) => {
                let s = 2 * k;
                let mut m = CMatrix::zeros(s, s);
                let mut idx = 0;
                for i in 0..s {
                    for j in i + 1..s {
                        m[(i, j)] = z[idx];
                        m[(j, i)] = -z[idx];
                        idx += 1;
                    }
                }
                Some(m)
            }
            _ => None,
        }
    }

    /// Projects a matrix onto the family's shape (symmetrizing or
    /// antisymmetrizing as needed).
    pub fn from_matrix(spec: JordanAlgebraSpec, m: &CMatrix) -> Result<Self> {
        let size = spec
            .matrix_size()
            .ok_or_else(|| JordanError::InvalidSpec(format!("{spec} is not a matrix family")))?;
        if m.nrows() != size || m.ncols() != size {
            return Err(JordanError::Dimension { expected: size * size, got: m.len() });
        }
        let mut coords = Vec::with_capacity(spec.dim());
        match spec.family {
            Family::RealSymmetric(n) => {
                for i in 0..n {
                    for j in i..n {
                        coords.push((m[(i, j)] + m[(j, i)]) * 0.5);
                    }
                }
            }
            Family::HermitianComplex(n) => {
                for i in 0..n {
                    for j in 0..n {
                        coords.push(m[(i, j)]);
                    }
                }
            }
            Family::HermitianQuaternion(_) => {
                for i in 0..size {
                    for j in i + 1..size {
                        coords.push((m[(i, j)] - m[(j, i)]) * 0.5);
                    }
                }
            }
            _ => unreachable!(),
        }
        Self::new(spec, CVector::from_vec(coords))
    }

    fn with_coords(&self, coords: CVector) -> Self {
        JordanElement { spec: self.spec, coords }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.with_coords(&self.coords * s)
    }

    pub fn add(&self, other: &JordanElement) -> Result<Self> {
        same_spec(&self.spec, &other.spec)?;
        Ok(self.with_coords(&self.coords + &other.coords))
    }

    pub fn sub(&self, other: &JordanElement) -> Result<Self> {
        same_spec(&self.spec, &other.spec)?;
        Ok(self.with_coords(&self.coords - &other.coords))
    }

    pub fn square(&self) -> Self {
        jordan_product(self, self).expect("same spec")
    }

    /// Trace form normalized so that `trace(e) = rank`.
    pub fn trace(&self) -> Complex64 {
        let z = &self.coords;
        match self.spec.family {
            Family::SpinFactor(_) => z[0] * 2.0,
            Family::Albert => z[0] + z[1] + z[2],
            Family::HermitianQuaternion(k) => {
                // tr(A J^-1) / 2
                let a = self.to_matrix().unwrap();
                (a * symplectic(k).transpose()).trace() * 0.5
            }
            _ => self.to_matrix().unwrap().trace(),
        }
    }
}

pub fn unit(spec: JordanAlgebraSpec) -> JordanElement {
    let mut x = JordanElement::zero(spec);
    match spec.family {
        Family::RealSymmetric(n) => {
            let mut k = 0;
            for i in 0..n {
                x.coords[k] = c(1.0);
                k += n - i;
            }
        }
        Family::HermitianComplex(n) => {
            for i in 0..n {
                x.coords[i * n + i] = c(1.0);
            }
        }
        Family::HermitianQuaternion(k) => {
            x = JordanElement::from_matrix(spec, &symplectic(k)).unwrap();
        }
        Family::SpinFactor(_) => x.coords[0] = c(1.0),
        Family::Albert => {
            for i in 0..3 {
                x.coords[i] = c(1.0);
            }
        }
    }
    x
}

type OctMatrix = [[octonion::Octonion; 3]; 3];

fn albert_matrix(z: &CVector) -> OctMatrix {
    let oct = |off: usize| -> octonion::Octonion { std::array::from_fn(|i| z[off + i]) };
    let (u, v, w) = (oct(3), oct(11), oct(19));
    let s = octonion::scalar;
    [
        [s(z[0]), w, octonion::conj(&v)],
        [octonion::conj(&w), s(z[1]), u],
        [v, octonion::conj(&u), s(z[2])],
    ]
}

fn albert_coords(m: &OctMatrix) -> CVector {
    let mut out = Vec::with_capacity(27);
    out.push(m[0][0][0]);
    out.push(m[1][1][0]);
    out.push(m[2][2][0]);
    out.extend_from_slice(&m[1][2]);
    out.extend_from_slice(&m[2][0]);
    out.extend_from_slice(&m[0][1]);
    CVector::from_vec(out)
}

fn oct_matmul(x: &OctMatrix, y: &OctMatrix) -> OctMatrix {
    let mut out = [[octonion::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = octonion::add(&out[i][j], &octonion::mul(&x[i][k], &y[k][j]));
            }
        }
    }
    out
}

pub fn jordan_product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    same_spec(&x.spec, &y.spec)?;
    let spec = x.spec;
    match spec.family {
        Family::RealSymmetric(_) | Family::HermitianComplex(_) => {
            let (a, b) = (x.to_matrix().unwrap(), y.to_matrix().unwrap());
            let p = (&a * &b + &b * &a) * c(0.5);
            JordanElement::from_matrix(spec, &p)
        }
        Family::HermitianQuaternion(k) => {
            let (a, b) = (x.to_matrix().unwrap(), y.to_matrix().unwrap());
            let jinv = -symplectic(k);
            let p = (&a * &jinv * &b + &b * &jinv * &a) * c(0.5);
            JordanElement::from_matrix(spec, &p)
        }
        Family::SpinFactor(d) => {
            let (s, t) = (x.coords[0], y.coords[0]);
            let u = x.coords.rows(1, d - 1);
            let v = y.coords.rows(1, d - 1);
            let mut out = CVector::zeros(d);
            out[0] = s * t + u.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<Complex64>();
            for i in 0..d - 1 {
                out[i + 1] = s * v[i] + t * u[i];
            }
            Ok(JordanElement { spec, coords: out })
        }
        Family::Albert => {
            let (a, b) = (albert_matrix(&x.coords), albert_matrix(&y.coords));
            let ab = oct_matmul(&a, &b);
            let ba = oct_matmul(&b, &a);
            let mut sum = [[octonion::zero(); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    sum[i][j] = octonion::scale(&octonion::add(&ab[i][j], &ba[i][j]), c(0.5));
                }
            }
            Ok(JordanElement { spec, coords: albert_coords(&sum) })
        }
    }
}

/// Matrix of `L(x): y -> x o y` in the coordinate basis.
pub fn lmul_operator(x: &JordanElement) -> CMatrix {
    let n = x.spec.dim();
    let mut m = CMatrix::zeros(n, n);
    for k in 0..n {
        let mut e = JordanElement::zero(x.spec);
        e.coords[k] = c(1.0);
        let col = jordan_product(x, &e).expect("same spec").coords;
        m.set_column(k, &col);
    }
    m
}

/// `P(x) = 2 L(x)^2 - L(x^2)`.
pub fn quadratic_rep(x: &JordanElement) -> QuadraticRep {
    let l = lmul_operator(x);
    let l2 = lmul_operator(&x.square());
    QuadraticRep { spec: x.spec, matrix: &l * &l * c(2.0) - l2 }
}

/// The Koecher norm, normalized to `det(e) = 1`.
pub fn koecher_det(x: &JordanElement) -> Complex64 {
    let z = &x.coords;
    match x.spec.family {
        Family::RealSymmetric(_) | Family::HermitianComplex(_) => x.to_matrix().unwrap().determinant(),
        Family::HermitianQuaternion(_) => pfaffian(&x.to_matrix().unwrap()),
        Family::SpinFactor(d) => z[0] * z[0] - (1..d).map(|i| z[i] * z[i]).sum::<Complex64>(),
        Family::Albert => {
            let m = albert_matrix(z);
            let (a, b, cc) = (z[0], z[1], z[2]);
            let (u, v, w) = (m[1][2], m[2][0], m[0][1]);
            a * b * cc - a * octonion::norm(&u) - b * octonion::norm(&v) - cc * octonion::norm(&w)
                + octonion::re(&octonion::mul(&octonion::mul(&u, &v), &w)) * 2.0
        }
    }
}

pub fn inverse(x: &JordanElement) -> Result<JordanElement> {
    let det = koecher_det(x);
    if det.norm() < SINGULAR_TOLERANCE {
        return Err(JordanError::Singular(det.norm()));
    }
    let spec = x.spec;
    let singular = || JordanError::Singular(det.norm());
    match spec.family {
        Family::RealSymmetric(_) | Family::HermitianComplex(_) => {
            let inv = x.to_matrix().unwrap().try_inverse().ok_or_else(singular)?;
            JordanElement::from_matrix(spec, &inv)
        }
        Family::HermitianQuaternion(k) => {
            let j = symplectic(k);
            let inv = x.to_matrix().unwrap().try_inverse().ok_or_else(singular)?;
            JordanElement::from_matrix(spec, &(&j * inv * &j))
        }
        Family::SpinFactor(_) => {
            let mut coords = x.coords.map(|z| -z);
            coords[0] = x.coords[0];
            Ok(x.with_coords(coords / det))
        }
        Family::Albert => {
            // Cayley-Hamilton: x^3 - tr x^2 + S x - det e = 0.
            let x2 = x.square();
            let tr = x.trace();
            let s = (tr * tr - x2.trace()) * 0.5;
            let e = unit(spec);
            let num = &x2.coords - &x.coords * tr + &e.coords * s;
            Ok(x.with_coords(num / det))
        }
    }
}

/// Coordinates in which [`koecher_norm_polynomial`] evaluates to
/// [`koecher_det`]; the identity except for spin factors.
pub fn polynomial_coordinates(x: &JordanElement) -> CVector {
    match x.spec.family {
        Family::SpinFactor(_) => {
            let mut v = x.coords.map(|z| z * I);
            v[0] = x.coords[0];
            v
        }
        _ => x.coords.clone(),
    }
}

/// `e + scale * g` with `g` complex Gaussian, spread so that the
/// perturbation has comparable size in every family.
pub fn random_element<R: Rng + ?Sized>(spec: JordanAlgebraSpec, rng: &mut R, scale: f64) -> JordanElement {
    let sd = scale * (spec.rank() as f64 / spec.dim() as f64).sqrt();
    let e = unit(spec);
    let noise = CVector::from_fn(spec.dim(), |_, _| cgauss(rng) * sd);
    e.with_coords(&e.coords + noise)
}

/// A random element of the real form `V`, of typical size `scale`.
pub fn random_real_element<R: Rng + ?Sized>(spec: JordanAlgebraSpec, rng: &mut R, scale: f64) -> JordanElement {
    let sd = scale * (spec.rank() as f64 / spec.dim() as f64).sqrt();
    match spec.family {
        Family::HermitianComplex(n) => {
            let g = CMatrix::from_fn(n, n, |_, _| cgauss(rng) * sd);
            let h = (&g + g.adjoint()) * c(0.5);
            JordanElement::from_matrix(spec, &h).unwrap()
        }
        Family::HermitianQuaternion(k) => {
            // Quaternionic Hermitian M (M = M*, M^T = J^-1 M J) maps to the
            // skew model by A = M J.
            let s = 2 * k;
            let j = symplectic(k);
            let jinv = -&j;
            let g = CMatrix::from_fn(s, s, |_, _| cgauss(rng) * sd);
            let h = (&g + g.adjoint()) * c(0.5);
            let m = (&h + &jinv * h.transpose() * &j) * c(0.5);
            JordanElement::from_matrix(spec, &(m * j)).unwrap()
        }
        _ => JordanElement {
            spec,
            coords: CVector::from_fn(spec.dim(), |_, _| c(rgauss(rng) * sd)),
        },
    }
}
