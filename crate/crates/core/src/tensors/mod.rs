//! Invariant tensors on bounded symmetric domains and the group actions
//! that fix them.
//!
//! Bounded realizations: `I_{n,n}` is the set of `n x n` matrices with
//! `I - Z* Z > 0`; `II_{2k}` and `III_n` are its skew and symmetric
//! slices; `IV_d` is the Lie ball in `C^d`. Group elements act by
//! `Z -> (AZ + B)(CZ + D)^-1`. The tensor `N^a (dz^top)^-m` is checked
//! against this action on the matrix types and against the tube
//! inversion `j(z) = -z^-1` on every type.

mod verify;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::domains::{DomainError, DomainKind, DomainProduct, IrreducibleDomain, TensorDegreeSpec};
use crate::jordan::{koecher_norm_polynomial, JordanAlgebraSpec, JordanElement};
use crate::linalg::{c, cgauss, CMatrix, I};
use crate::poly::Polynomial;

pub use verify::{
    verify_cocycle, verify_cocycle_with_step, verify_tensor_invariance, verify_tensor_invariance_with_step,
    verify_tube_inversion, verify_tube_inversion_with_step, VerificationRecord,
};

pub const BOUNDARY_TOLERANCE: f64 = 1e-12;
/// Group samples with `cond(CZ + D)` above this are redrawn.
pub const MAX_CONDITION: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("point on or past the boundary (|det| = {0:e})")]
    Boundary(f64),
    #[error("not available for {0}")]
    Unsupported(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

pub type Result<T> = std::result::Result<T, TensorError>;

/// A point of a bounded realization; a `d x 1` column for `IV_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedDomainPoint {
    pub domain: IrreducibleDomain,
    pub z: CMatrix,
}

impl BoundedDomainPoint {
    pub fn new(domain: IrreducibleDomain, z: CMatrix) -> Result<Self> {
        check_shape(&domain, &z)?;
        Ok(BoundedDomainPoint { domain, z })
    }

    pub fn origin(domain: IrreducibleDomain) -> Result<Self> {
        let (r, c) = shape(&domain)?;
        Ok(BoundedDomainPoint { domain, z: CMatrix::zeros(r, c) })
    }
}

impl Serialize for BoundedDomainPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundedDomainPoint", 2)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("z", &matrix_to_json(&self.z))?;
        st.end()
    }
}

/// Nested rows of `[re, im]` pairs.
pub fn matrix_to_json(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn matrix_from_json(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != nc) {
        return Err(TensorError::Shape("ragged rows".into()));
    }
    Ok(CMatrix::from_fn(nr, nc, |i, j| num_complex::Complex64::new(rows[i][j][0], rows[i][j][1])))
}

fn shape(domain: &IrreducibleDomain) -> Result<(usize, usize)> {
    match domain.kind {
        DomainKind::TypeI(n) | DomainKind::TypeII(n) | DomainKind::TypeIII(n) => Ok((n as usize, n as usize)),
        DomainKind::TypeIV(d) => Ok((d as usize, 1)),
        DomainKind::Exceptional27 => Err(TensorError::Unsupported("E27 bounded realization".into())),
    }
}

fn check_shape(domain: &IrreducibleDomain, z: &CMatrix) -> Result<()> {
    let (r, c) = shape(domain)?;
    if z.shape() != (r, c) {
        return Err(TensorError::Shape(format!("{domain} needs {r}x{c}, got {}x{}", z.nrows(), z.ncols())));
    }
    let scale = crate::linalg::max_abs(z).max(1.0);
    let asym = match domain.kind {
        DomainKind::TypeII(_) => crate::linalg::max_abs(&(z + z.transpose())),
        DomainKind::TypeIII(_) => crate::linalg::max_abs(&(z - z.transpose())),
        _ => 0.0,
    };
    if asym > 1e-12 * scale {
        return Err(TensorError::Shape(format!("{domain} needs a {} matrix", if matches!(domain.kind, DomainKind::TypeII(_)) { "skew" } else { "symmetric" })));
    }
    Ok(())
}

/// Membership in the bounded realization with margin `tol`.
pub fn contains(domain: &IrreducibleDomain, z: &CMatrix, tol: f64) -> Result<bool> {
    check_shape(domain, z)?;
    if let DomainKind::TypeIV(_) = domain.kind {
        let zz: num_complex::Complex64 = z.iter().map(|x| x * x).sum();
        let zbz: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        return Ok(zz.norm_sqr() + 1.0 - 2.0 * zbz > tol && zbz < 1.0 - tol);
    }
    // Smallest eigenvalue of I - Z*Z is 1 - sigma_max^2.
    let smax = z.clone().svd(false, false).singular_values.iter().cloned().fold(0.0, f64::max);
    Ok(1.0 - smax * smax > tol)
}

/// A random interior point with spectral norm (or Lie-ball radius) below
/// `radius < 1`.
pub fn random_point<R: Rng + ?Sized>(domain: &IrreducibleDomain, rng: &mut R, radius: f64) -> Result<BoundedDomainPoint> {
    let (r, cc) = shape(domain)?;
    let g = CMatrix::from_fn(r, cc, |_, _| cgauss(rng));
    let z = match domain.kind {
        DomainKind::TypeII(_) => &g - g.transpose(),
        DomainKind::TypeIII(_) => &g + g.transpose(),
        _ => g,
    };
    let t: f64 = radius * rng.random_range(0.2..1.0);
    let z = match domain.kind {
        // Radius below 1/sqrt(2) keeps both Lie-ball inequalities strict.
        DomainKind::TypeIV(_) => &z * c(t * std::f64::consts::FRAC_1_SQRT_2 / z.norm()),
        _ => {
            let smax = z.clone().svd(false, false).singular_values.iter().cloned().fold(0.0, f64::max);
            &z * c(t / smax)
        }
    };
    BoundedDomainPoint::new(*domain, z)
}

/// Element `[[A, B], [C, D]]` of the automorphism group of a matrix-type
/// bounded realization.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub domain: IrreducibleDomain,
    pub g: CMatrix,
}

impl GroupElement {
    pub fn identity(domain: IrreducibleDomain) -> Result<Self> {
        let n = matrix_size(&domain)?;
        Ok(GroupElement { domain, g: CMatrix::identity(2 * n, 2 * n) })
    }

    fn half(&self) -> usize {
        self.g.nrows() / 2
    }

    pub fn a(&self) -> CMatrix {
        let n = self.half();
        self.g.view((0, 0), (n, n)).into_owned()
    }

    pub fn b(&self) -> CMatrix {
        let n = self.half();
        self.g.view((0, n), (n, n)).into_owned()
    }

    pub fn c(&self) -> CMatrix {
        let n = self.half();
        self.g.view((n, 0), (n, n)).into_owned()
    }

    pub fn d(&self) -> CMatrix {
        let n = self.half();
        self.g.view((n, n), (n, n)).into_owned()
    }

    /// Largest residual of the defining relations: `g* J g = J`,
    /// `det g = 1`, and `g^T S g = S` with `S` symmetric for type II,
    /// skew for type III.
    pub fn relation_residual(&self) -> f64 {
        let n = self.half();
        let mut j = CMatrix::identity(2 * n, 2 * n);
        for i in n..2 * n {
            j[(i, i)] = c(-1.0);
        }
        let mut res = crate::linalg::max_abs(&(self.g.adjoint() * &j * &self.g - &j));
        res = res.max((self.g.clone().determinant() - c(1.0)).norm());
        let form = |sign: f64| {
            let mut s = CMatrix::zeros(2 * n, 2 * n);
            for i in 0..n {
                s[(i, n + i)] = c(1.0);
                s[(n + i, i)] = c(sign);
            }
            s
        };
        let s = match self.domain.kind {
            DomainKind::TypeII(_) => Some(form(1.0)),
            DomainKind::TypeIII(_) => Some(form(-1.0)),
            _ => None,
        };
        if let Some(s) = s {
            res = res.max(crate::linalg::max_abs(&(self.g.transpose() * &s * &self.g - &s)));
        }
        res
    }
}

fn matrix_size(domain: &IrreducibleDomain) -> Result<usize> {
    match domain.kind {
        DomainKind::TypeI(n) | DomainKind::TypeII(n) | DomainKind::TypeIII(n) => Ok(n as usize),
        _ => Err(TensorError::Unsupported(format!("{domain} group action (verified on the tube side)"))),
    }
}

/// Exponential of a random Lie-algebra element of norm about `scale`.
pub fn random_group_element_with<R: Rng + ?Sized>(domain: &IrreducibleDomain, rng: &mut R, scale: f64) -> Result<GroupElement> {
    let n = matrix_size(domain)?;
    let sd = scale / (n as f64).sqrt();
    let g = |rng: &mut R| CMatrix::from_fn(n, n, |_, _| cgauss(rng) * sd);
    let h = g(rng);
    let mut a = (&h - h.adjoint()) * c(0.5);
    let raw = g(rng);
    let b = match domain.kind {
        DomainKind::TypeII(_) => (&raw - raw.transpose()) * c(0.5),
        DomainKind::TypeIII(_) => (&raw + raw.transpose()) * c(0.5),
        _ => raw,
    };
    let d = match domain.kind {
        DomainKind::TypeI(_) => {
            let h2 = g(rng);
            let mut d = (&h2 - h2.adjoint()) * c(0.5);
            let shift = (a.trace() + d.trace()) / c(2.0 * n as f64);
            for i in 0..n {
                a[(i, i)] -= shift;
                d[(i, i)] -= shift;
            }
            d
        }
        _ => a.map(|x| x.conj()),
    };
    let mut x = CMatrix::zeros(2 * n, 2 * n);
    x.view_mut((0, 0), (n, n)).copy_from(&a);
    x.view_mut((0, n), (n, n)).copy_from(&b);
    x.view_mut((n, 0), (n, n)).copy_from(&b.adjoint());
    x.view_mut((n, n), (n, n)).copy_from(&d);
    Ok(GroupElement { domain: *domain, g: x.exp() })
}

pub fn random_group_element(domain: &IrreducibleDomain, seed: u64, scale: f64) -> Result<GroupElement> {
    random_group_element_with(domain, &mut ChaCha8Rng::seed_from_u64(seed), scale)
}

/// `CZ + D`.
pub fn automorphy_factor(gamma: &GroupElement, z: &CMatrix) -> CMatrix {
    gamma.c() * z + gamma.d()
}

pub fn mobius(gamma: &GroupElement, z: &BoundedDomainPoint) -> Result<BoundedDomainPoint> {
    if gamma.domain != z.domain {
        return Err(TensorError::Shape(format!("group of {} acting on {}", gamma.domain, z.domain)));
    }
    let out = mobius_matrix(gamma, &z.z)?;
    Ok(BoundedDomainPoint { domain: z.domain, z: out })
}

fn mobius_matrix(gamma: &GroupElement, z: &CMatrix) -> Result<CMatrix> {
    let f = automorphy_factor(gamma, z);
    let det = f.clone().determinant();
    if det.norm() < BOUNDARY_TOLERANCE {
        return Err(TensorError::Boundary(det.norm()));
    }
    let inv = f.try_inverse().ok_or(TensorError::Boundary(det.norm()))?;
    Ok((gamma.a() * z + gamma.b()) * inv)
}

/// `W = i (I + Z)(I - Z)^-1`, from `I_{n,n}` to the Siegel half-space.
pub fn cayley(z: &CMatrix) -> Result<CMatrix> {
    let n = z.nrows();
    let id = CMatrix::identity(n, n);
    let inv = invert_checked(&(&id - z))?;
    Ok((&id + z) * inv * I)
}

/// `Z = (W + iI)^-1 (W - iI)`.
pub fn inverse_cayley(w: &CMatrix) -> Result<CMatrix> {
    let n = w.nrows();
    let id = CMatrix::identity(n, n) * I;
    let inv = invert_checked(&(w + &id))?;
    Ok(inv * (w - &id))
}

/// Whether `Im W = (W - W*)/2i` is positive definite.
pub fn in_siegel_half_space(w: &CMatrix, tol: f64) -> bool {
    let im = (w - w.adjoint()) * c(0.5) * (-I);
    let herm = (&im + im.adjoint()) * c(0.5);
    herm.symmetric_eigenvalues().iter().all(|&e| e > tol)
}

fn invert_checked(m: &CMatrix) -> Result<CMatrix> {
    let smin = m.clone().svd(false, false).singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if smin < BOUNDARY_TOLERANCE {
        return Err(TensorError::Boundary(smin));
    }
    m.clone().try_inverse().ok_or(TensorError::Boundary(smin))
}

/// `psi = N^a (dz^top)^-m` on one irreducible factor, with `a r = m d`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTensor {
    pub domain: IrreducibleDomain,
    pub norm: Polynomial,
    pub a: u32,
    pub m: u32,
}

impl InvariantTensor {
    pub fn new(domain: IrreducibleDomain, m: u32) -> Result<Self> {
        let spec = TensorDegreeSpec::new(&DomainProduct::new([domain]), m)?;
        let norm = koecher_norm_polynomial(JordanAlgebraSpec::from_domain(&domain));
        Ok(InvariantTensor { domain, norm, a: spec.exponents[0], m })
    }

    /// The tensor with the least admissible twist.
    pub fn minimal(domain: IrreducibleDomain) -> Self {
        let (m, _) = crate::domains::minimal_m(&[(domain.rank, domain.dim)]).expect("non-empty");
        Self::new(domain, m).expect("minimal twist is admissible")
    }

    pub fn jordan_spec(&self) -> JordanAlgebraSpec {
        JordanAlgebraSpec::from_domain(&self.domain)
    }
}

/// The tensor polynomial `prod N_j^(a_j)` of a product, one block of
/// variables per factor in canonical order.
pub fn build_psi(product: &DomainProduct, m: u32) -> Result<Polynomial> {
    let spec = TensorDegreeSpec::new(product, m)?;
    let nvars = product.dim() as usize;
    let mut psi = Polynomial::one(nvars);
    let mut offset = 0;
    for (factor, &a) in product.factors().iter().zip(&spec.exponents) {
        let norm = koecher_norm_polynomial(JordanAlgebraSpec::from_domain(factor));
        let placed = norm.embed(nvars, offset).expect("block fits");
        psi = &psi * &placed.pow(a);
        offset += factor.dim as usize;
    }
    Ok(psi)
}

/// Independent coordinates of a matrix-type point, in the Jordan basis.
fn coords_of(spec: JordanAlgebraSpec, z: &CMatrix) -> Vec<num_complex::Complex64> {
    JordanElement::from_matrix(spec, z).expect("matrix family").coords.as_slice().to_vec()
}

fn matrix_of(spec: JordanAlgebraSpec, coords: &[num_complex::Complex64]) -> CMatrix {
    JordanElement::from_slice(spec, coords).expect("length").to_matrix().expect("matrix family")
}

pub(crate) type Jacobian = DMatrix<num_complex::Complex64>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, random_cmatrix};

    fn dom(s: &str) -> IrreducibleDomain {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let d = dom("I_{2,2}");
        assert!(contains(&d, &CMatrix::zeros(2, 2), 1e-12).unwrap());
        let mut z = CMatrix::zeros(2, 2);
        z[(0, 0)] = c(2.0);
        assert!(!contains(&d, &z, 1e-12).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = random_cmatrix(&mut rng, 2, 2);
        let smax = r.clone().svd(false, false).singular_values.max();
        assert!(contains(&d, &(r * c(0.9 / smax)), 1e-12).unwrap());
        assert!(contains(&dom("IV_5"), &CMatrix::zeros(5, 1), 1e-12).unwrap());
        assert!(contains(&d, &CMatrix::zeros(3, 3), 1e-12).is_err());
        assert!(contains(&dom("III_2"), &CMatrix::from_row_slice(2, 2, &[c(0.0), c(0.1), c(0.2), c(0.0)]), 0.0).is_err());
    }

    #[test]
    fn group_relations_hold() {
        for s in ["I_{1,1}", "I_{2,2}", "I_{3,3}", "II_4", "II_6", "III_2", "III_3"] {
            for seed in 0..5 {
                let g = random_group_element(&dom(s), seed, 0.8).unwrap();
                assert!(g.relation_residual() < 1e-10, "{s}: {}", g.relation_residual());
            }
        }
    }

    #[test]
    fn small_scale_is_near_identity() {
        let d = dom("I_{2,2}");
        let g = random_group_element(&d, 3, 1e-9).unwrap();
        assert!(max_abs(&(g.g - CMatrix::identity(4, 4))) < 1e-8);
    }

    #[test]
    fn mobius_preserves_domain_and_shape() {
        for s in ["I_{2,2}", "II_4", "III_3"] {
            let d = dom(s);
            for seed in 0..100 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = random_group_element_with(&d, &mut rng, 1.0).unwrap();
                let z = random_point(&d, &mut rng, 0.9).unwrap();
                let w = mobius(&g, &z).unwrap();
                assert!(contains(&d, &w.z, 0.0).unwrap(), "{s} seed {seed}");
            }
        }
        let d = dom("I_{2,2}");
        let id = GroupElement::identity(d).unwrap();
        let z = random_point(&d, &mut ChaCha8Rng::seed_from_u64(0), 0.5).unwrap();
        assert_eq!(mobius(&id, &z).unwrap(), z);
    }

    #[test]
    fn block_diagonal_fixes_origin() {
        let d = dom("I_{2,2}");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_cmatrix(&mut rng, 2, 2);
        let mut g = CMatrix::zeros(4, 4);
        g.view_mut((0, 0), (2, 2)).copy_from(&a);
        g.view_mut((2, 2), (2, 2)).copy_from(&a.adjoint().try_inverse().unwrap());
        let gamma = GroupElement { domain: d, g };
        let out = mobius(&gamma, &BoundedDomainPoint::origin(d).unwrap()).unwrap();
        assert!(max_abs(&out.z) < 1e-14);
    }

    #[test]
    fn cayley_round_trip() {
        let d = dom("I_{3,3}");
        assert!(max_abs(&(cayley(&CMatrix::zeros(2, 2)).unwrap() - CMatrix::identity(2, 2) * I)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let z = random_point(&d, &mut rng, 0.95).unwrap().z;
            let w = cayley(&z).unwrap();
            assert!(in_siegel_half_space(&w, 0.0));
            assert!(max_abs(&(inverse_cayley(&w).unwrap() - &z)) < 1e-10);
        }
        assert!(matches!(cayley(&CMatrix::identity(2, 2)), Err(TensorError::Boundary(_))));
        let outside = CMatrix::identity(2, 2) * c(-2.0);
        assert!(!in_siegel_half_space(&cayley(&outside).unwrap(), 0.0));
    }

    #[test]
    fn build_psi_examples() {
        let p = |s: &str| -> Polynomial { s.parse().unwrap() };
        let three_disks = DomainProduct::polydisk(3);
        assert_eq!(build_psi(&three_disks, 1).unwrap(), p("x1*x2*x3"));
        let i22 = DomainProduct::new([dom("I_{2,2}")]);
        assert_eq!(build_psi(&i22, 1).unwrap(), p("x1*x4 - x2*x3").pow(2));
        let iv3 = DomainProduct::new([dom("IV_3")]);
        assert_eq!(build_psi(&iv3, 2).unwrap(), p("x1^2 + x2^2 + x3^2").pow(3));
        assert!(matches!(build_psi(&iv3, 1), Err(TensorError::Domain(DomainError::NonIntegralExponent { .. }))));
    }

    #[test]
    fn tensor_exponents() {
        let t = InvariantTensor::new(dom("II_4"), 1).unwrap();
        assert_eq!((t.a, t.norm.total_degree()), (3, Some(2)));
        assert_eq!(InvariantTensor::minimal(dom("III_2")).m, 2);
    }
}
