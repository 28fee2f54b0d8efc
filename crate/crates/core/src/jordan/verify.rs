//! Randomized check of the quadratic-representation identities.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{inverse, koecher_det, quadratic_rep, random_element, JordanAlgebraSpec, JordanElement};
use crate::linalg::{c, rel_diff, rel_diff_scalar, CMatrix};

pub const DEFAULT_STEP: f64 = 1e-5;
const SAMPLE_SCALE: f64 = 0.6;

pub const IDENTITIES: [&str; 5] = [
    "P(x)x^-1 = x",
    "P(x)^-1 = P(x^-1)",
    "Dj(x) = P(x)^-1",
    "Det P(x) = det(x)^(2n/r)",
    "det(P(y)x) = det(y)^2 det(x)",
];

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityRecord {
    pub identity: String,
    pub trials: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct JordanReport {
    pub spec: JordanAlgebraSpec,
    pub tolerance: f64,
    pub step: f64,
    pub records: Vec<IdentityRecord>,
    /// Trials skipped because a sample was numerically singular.
    pub skipped: usize,
}

impl JordanReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.max_deviation < self.tolerance)
    }

    pub fn max_deviation(&self, identity: &str) -> Option<f64> {
        self.records.iter().find(|r| r.identity == identity).map(|r| r.max_deviation)
    }
}

pub fn verify_jordan_identities(spec: JordanAlgebraSpec, trials: usize, seed: u64, tolerance: f64) -> JordanReport {
    verify_jordan_identities_with_step(spec, trials, seed, tolerance, DEFAULT_STEP)
}

/// Jacobian of `z -> -z^-1` by central differences, one column per
/// coordinate.
fn inversion_jacobian(x: &JordanElement, step: f64) -> Option<CMatrix> {
    let n = x.spec.dim();
    let mut jac = CMatrix::zeros(n, n);
    for k in 0..n {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus.coords[k] += step;
        minus.coords[k] -= step;
        let fp = inverse(&plus).ok()?.coords;
        let fm = inverse(&minus).ok()?.coords;
        // j = -inverse, so Dj = -(f+ - f-)/2h.
        jac.set_column(k, &((fm - fp) / c(2.0 * step)));
    }
    Some(jac)
}

pub fn verify_jordan_identities_with_step(
    spec: JordanAlgebraSpec,
    trials: usize,
    seed: u64,
    tolerance: f64,
    step: f64,
) -> JordanReport {
    let mut dev = [0.0f64; 5];
    let mut skipped = 0;
    let exponent = spec.quadratic_exponent() as i32;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let x = random_element(spec, &mut rng, SAMPLE_SCALE);
        let y = random_element(spec, &mut rng, SAMPLE_SCALE);
        let (Ok(xi), Some(jac)) = (inverse(&x), inversion_jacobian(&x, step)) else {
            skipped += 1;
            continue;
        };
        let px = quadratic_rep(&x);
        let pxi = quadratic_rep(&xi);
        let Some(px_inv) = px.matrix.clone().try_inverse() else {
            skipped += 1;
            continue;
        };
        let back = px.apply(&xi).expect("same spec");
        dev[0] = dev[0].max(rel_diff(&to_col(&back.coords), &to_col(&x.coords)));
        dev[1] = dev[1].max(rel_diff(&px_inv, &pxi.matrix));
        dev[2] = dev[2].max(rel_diff(&jac, &pxi.matrix));
        let dx = koecher_det(&x);
        dev[3] = dev[3].max(rel_diff_scalar(px.matrix.clone().determinant(), dx.powi(exponent)));
        let pyx = quadratic_rep(&y).apply(&x).expect("same spec");
        let dy: Complex64 = koecher_det(&y);
        dev[4] = dev[4].max(rel_diff_scalar(koecher_det(&pyx), dy * dy * dx));
    }
    let ran = trials - skipped;
    JordanReport {
        spec,
        tolerance,
        step,
        records: IDENTITIES
            .iter()
            .zip(dev)
            .map(|(name, d)| IdentityRecord { identity: name.to_string(), trials: ran, max_deviation: d })
            .collect(),
        skipped,
    }
}

fn to_col(v: &crate::linalg::CVector) -> CMatrix {
    CMatrix::from_column_slice(v.len(), 1, v.as_slice())
}
