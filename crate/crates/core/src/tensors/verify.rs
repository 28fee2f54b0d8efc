//! Numerical checks of the cocycle, tensor invariance and tube inversion.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    automorphy_factor, coords_of, matrix_of, mobius_matrix, random_group_element_with, random_point, InvariantTensor,
    Result, TensorError, MAX_CONDITION,
};
use crate::domains::{DomainKind, IrreducibleDomain};
use crate::jordan::{
    inverse, koecher_det, quadratic_rep, random_real_element, unit, JordanAlgebraSpec,
    JordanElement,
};
use crate::linalg::{cgauss, condition_number, fd_jacobian, rel_diff, rel_diff_scalar_strict, CVector, I};

pub const DEFAULT_STEP: f64 = 1e-5;
const GROUP_SCALE: f64 = 1.0;
const POINT_RADIUS: f64 = 0.8;
const MAX_ATTEMPTS: usize = 50;

/// One line of a verification report.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationRecord {
    pub check: String,
    pub kind: String,
    pub trials: usize,
    pub step: f64,
    pub max_residual: f64,
    pub pass: bool,
}

fn record(check: &str, kind: String, trials: usize, step: f64, max_residual: f64, tol: f64) -> VerificationRecord {
    VerificationRecord { check: check.into(), kind, trials, step, max_residual, pass: max_residual < tol }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Exponents `(e_J, e_N)` with `Jac = det(CZ+D)^-e_J` and
/// `N(d gamma W) = det(CZ+D)^-e_N N(W)`.
fn cocycle_exponents(domain: &IrreducibleDomain) -> Result<(i32, i32)> {
    match domain.kind {
        DomainKind::TypeI(n) => Ok((2 * n as i32, 2)),
        DomainKind::TypeII(s) => Ok((s as i32 - 1, 1)),
        DomainKind::TypeIII(n) => Ok((n as i32 + 1, 2)),
        _ => Err(TensorError::Unsupported(format!("{domain} cocycle (matrix types only)"))),
    }
}

/// Per-trial data on the bounded side: `det(CZ+D)`, the Jacobian of the
/// Mobius map in Jordan coordinates, and a random tangent vector.
struct BoundedSample {
    factor_det: Complex64,
    jacobian: crate::tensors::Jacobian,
    tangent: Vec<Complex64>,
}

fn bounded_sample(domain: &IrreducibleDomain, rng: &mut ChaCha8Rng, step: f64) -> Result<Option<BoundedSample>> {
    let spec = JordanAlgebraSpec::from_domain(domain);
    for _ in 0..MAX_ATTEMPTS {
        let gamma = random_group_element_with(domain, rng, GROUP_SCALE)?;
        let z = random_point(domain, rng, POINT_RADIUS)?.z;
        let f = automorphy_factor(&gamma, &z);
        if condition_number(&f) > MAX_CONDITION {
            continue;
        }
        let map = |x: &[Complex64]| mobius_matrix(&gamma, &matrix_of(spec, x)).ok().map(|w| coords_of(spec, &w));
        let Some(jacobian) = fd_jacobian(map, &coords_of(spec, &z), step) else {
            continue;
        };
        let tangent = (0..spec.dim()).map(|_| cgauss(rng)).collect();
        return Ok(Some(BoundedSample { factor_det: f.determinant(), jacobian, tangent }));
    }
    Ok(None)
}

fn eval_norm(tensor: &InvariantTensor, coords: &[Complex64]) -> Complex64 {
    tensor.norm.evaluate_complex(coords).expect("arity matches")
}

pub fn verify_cocycle(domain: &IrreducibleDomain, trials: usize, seed: u64, tol: f64) -> Result<Vec<VerificationRecord>> {
    verify_cocycle_with_step(domain, trials, seed, tol, DEFAULT_STEP)
}

/// Checks `det(d gamma) = det(CZ+D)^-e_J` and the scaling of the norm under
/// the differential; a pass means the character is trivial on the samples.
pub fn verify_cocycle_with_step(
    domain: &IrreducibleDomain,
    trials: usize,
    seed: u64,
    tol: f64,
    step: f64,
) -> Result<Vec<VerificationRecord>> {
    let (ej, en) = cocycle_exponents(domain)?;
    let tensor = InvariantTensor::minimal(*domain);
    let (mut jac_res, mut norm_res, mut ran) = (0.0f64, 0.0f64, 0);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let Some(s) = bounded_sample(domain, &mut rng, step)? else {
            continue;
        };
        ran += 1;
        let jdet = s.jacobian.clone().determinant();
        jac_res = jac_res.max(rel_diff_scalar_strict(jdet, s.factor_det.powi(-ej)));
        let pushed = &s.jacobian * CVector::from_vec(s.tangent.clone());
        let lhs = eval_norm(&tensor, pushed.as_slice());
        let rhs = s.factor_det.powi(-en) * eval_norm(&tensor, &s.tangent);
        norm_res = norm_res.max(rel_diff_scalar_strict(lhs, rhs));
    }
    let kind = domain.to_string();
    Ok(vec![
        record("cocycle-jacobian", kind.clone(), ran, step, jac_res, tol),
        record("cocycle-norm", kind, ran, step, norm_res, tol),
    ])
}

pub fn verify_tensor_invariance(tensor: &InvariantTensor, trials: usize, seed: u64, tol: f64) -> Result<Vec<VerificationRecord>> {
    verify_tensor_invariance_with_step(tensor, trials, seed, tol, DEFAULT_STEP)
}

/// `gamma^* psi = psi`, i.e. `N(d gamma W)^a Jac^-m = N(W)^a`. Types IV
/// and E27 are checked against the tube inversion instead.
pub fn verify_tensor_invariance_with_step(
    tensor: &InvariantTensor,
    trials: usize,
    seed: u64,
    tol: f64,
    step: f64,
) -> Result<Vec<VerificationRecord>> {
    let domain = tensor.domain;
    if cocycle_exponents(&domain).is_err() {
        let spec = tensor.jordan_spec();
        let mut res = 0.0f64;
        let mut ran = 0;
        for trial in 0..trials {
            let mut rng = trial_rng(seed, trial);
            if let Some(link) = tube_sample(spec, &mut rng, step) {
                ran += 1;
                res = res.max(pullback_residual(tensor, &link));
            }
        }
        return Ok(vec![record("tensor-invariance-tube", domain.to_string(), ran, step, res, tol)]);
    }
    let (a, m) = (tensor.a as i32, tensor.m as i32);
    let (mut res, mut ran) = (0.0f64, 0);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let Some(s) = bounded_sample(&domain, &mut rng, step)? else {
            continue;
        };
        ran += 1;
        let jdet = s.jacobian.clone().determinant();
        let pushed = &s.jacobian * CVector::from_vec(s.tangent.clone());
        let lhs = eval_norm(tensor, pushed.as_slice()).powi(a) * jdet.powi(-m);
        let rhs = eval_norm(tensor, &s.tangent).powi(a);
        res = res.max(rel_diff_scalar_strict(lhs, rhs));
    }
    Ok(vec![record("tensor-invariance", domain.to_string(), ran, step, res, tol)])
}

/// A tube point `z = x + i g^2` with the Jacobian of `j(z) = -z^-1`.
struct TubeSample {
    z: JordanElement,
    dj: crate::tensors::Jacobian,
    tangent: JordanElement,
}

fn random_tube_point<R: Rng + ?Sized>(spec: JordanAlgebraSpec, rng: &mut R) -> JordanElement {
    let x = random_real_element(spec, rng, 1.0);
    let e = unit(spec);
    let g = e.add(&random_real_element(spec, rng, 0.5)).expect("same spec");
    x.add(&g.square().scale(I)).expect("same spec")
}

fn tube_sample(spec: JordanAlgebraSpec, rng: &mut ChaCha8Rng, step: f64) -> Option<TubeSample> {
    for _ in 0..MAX_ATTEMPTS {
        let z = random_tube_point(spec, rng);
        let j = |v: &[Complex64]| {
            let el = JordanElement::from_slice(spec, v).ok()?;
            inverse(&el).ok().map(|inv| inv.coords.iter().map(|x| -x).collect())
        };
        let Some(dj) = fd_jacobian(j, z.coords.as_slice(), step) else {
            continue;
        };
        let tangent = JordanElement::new(spec, CVector::from_fn(spec.dim(), |_, _| cgauss(rng))).expect("dimension");
        return Some(TubeSample { z, dj, tangent });
    }
    None
}

fn pullback_residual(tensor: &InvariantTensor, s: &TubeSample) -> f64 {
    let (a, m) = (tensor.a as i32, tensor.m as i32);
    let pushed = JordanElement::new(s.tangent.spec, &s.dj * &s.tangent.coords).expect("dimension");
    let lhs = koecher_det(&pushed).powi(a) * s.dj.clone().determinant().powi(-m);
    rel_diff_scalar_strict(lhs, koecher_det(&s.tangent).powi(a))
}

pub fn verify_tube_inversion(spec: JordanAlgebraSpec, trials: usize, seed: u64, tol: f64) -> Vec<VerificationRecord> {
    verify_tube_inversion_with_step(spec, trials, seed, tol, DEFAULT_STEP)
}

/// The inversion chain: `Dj(z) = P(z)^-1`, `det(P(z)^-1 W) =
/// det(z)^-2 det(W)`, `Det P(z)^-1 = det(z)^(-2n/r)`, and the resulting
/// `j^* psi = psi` for the minimal tensor.
pub fn verify_tube_inversion_with_step(
    spec: JordanAlgebraSpec,
    trials: usize,
    seed: u64,
    tol: f64,
    step: f64,
) -> Vec<VerificationRecord> {
    let tensor = InvariantTensor::minimal(spec.domain());
    let exponent = spec.quadratic_exponent() as i32;
    let mut res = [0.0f64; 4];
    let mut ran = 0;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let Some(s) = tube_sample(spec, &mut rng, step) else {
            continue;
        };
        let Some(p_inv) = quadratic_rep(&s.z).matrix.try_inverse() else {
            continue;
        };
        ran += 1;
        let dz = koecher_det(&s.z);
        res[0] = res[0].max(rel_diff(&s.dj, &p_inv));
        let moved = JordanElement::new(spec, &p_inv * &s.tangent.coords).expect("dimension");
        res[1] = res[1].max(rel_diff_scalar_strict(koecher_det(&moved), dz.powi(-2) * koecher_det(&s.tangent)));
        res[2] = res[2].max(rel_diff_scalar_strict(p_inv.determinant(), dz.powi(-exponent)));
        res[3] = res[3].max(pullback_residual(&tensor, &s));
    }
    let kind = spec.to_string();
    ["inversion-jacobian", "inversion-norm", "inversion-volume", "inversion-pullback"]
        .iter()
        .zip(res)
        .map(|(name, r)| record(name, kind.clone(), ran, step, r, tol))
        .collect()
}
