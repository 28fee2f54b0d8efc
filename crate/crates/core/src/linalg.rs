//! Small dense complex linear-algebra helpers shared by the numeric modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Standard complex Gaussian with `E|z|^2 = 1`.
pub fn cgauss<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn rgauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_cmatrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| cgauss(rng))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `|a - b| / max(1, |b|)` entrywise.
pub fn rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b)) / max_abs(b).max(1.0)
}

pub fn rel_diff_scalar(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// `|a - b| / |b|`, for quantities whose scale carries no meaning.
pub fn rel_diff_scalar_strict(a: Complex64, b: Complex64) -> f64 {
    if b.norm() == 0.0 {
        return a.norm();
    }
    (a - b).norm() / b.norm()
}

/// Pfaffian of a skew-symmetric matrix by pivoted skew elimination.
pub fn pfaffian(m: &CMatrix) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "pfaffian needs a square matrix");
    if n % 2 == 1 {
        return Complex64::new(0.0, 0.0);
    }
    let mut a = m.clone();
    let mut pf = Complex64::new(1.0, 0.0);
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        for i in k + 2..n {
            if a[(i, k)].norm() > a[(kp, k)].norm() {
                kp = i;
            }
        }
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        if piv.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        pf *= piv;
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|j| a[(k, j)] / piv).collect();
            let col: Vec<Complex64> = (k + 2..n).map(|i| a[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    pf
}

/// 2-norm condition number from the singular values.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Jacobian of a holomorphic map by central differences along the real
/// coordinate axes; `None` if `f` fails at a probe point.
pub fn fd_jacobian<F>(f: F, x: &[Complex64], step: f64) -> Option<CMatrix>
where
    F: Fn(&[Complex64]) -> Option<Vec<Complex64>>,
{
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    let mut probe = x.to_vec();
    for k in 0..n {
        probe[k] = x[k] + step;
        let fp = f(&probe)?;
        probe[k] = x[k] - step;
        let fm = f(&probe)?;
        probe[k] = x[k];
        cols.push(CVector::from_iterator(fp.len(), fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * step))));
    }
    let rows = cols.first().map_or(0, |c| c.len());
    Some(CMatrix::from_fn(rows, n, |i, j| cols[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 4, 6] {
            let r = random_cmatrix(&mut rng, n, n);
            let a = &r - r.transpose();
            let pf = pfaffian(&a);
            let det = a.clone().determinant();
            assert!((pf * pf - det).norm() < 1e-9 * det.norm().max(1.0));
        }
    }

    #[test]
    fn fd_jacobian_of_square() {
        let x = [Complex64::new(0.3, 0.2), Complex64::new(-1.0, 0.5)];
        let f = |v: &[Complex64]| Some(vec![v[0] * v[0], v[0] * v[1]]);
        let j = fd_jacobian(f, &x, 1e-5).unwrap();
        let exact = CMatrix::from_row_slice(2, 2, &[x[0] * 2.0, c(0.0), x[1], x[0]]);
        assert!(rel_diff(&j, &exact) < 1e-9);
    }

    #[test]
    fn pfaffian_of_4x4_formula() {
        let mut a = CMatrix::zeros(4, 4);
        let vals = [(0, 1, 2.0), (0, 2, 3.0), (0, 3, 5.0), (1, 2, 7.0), (1, 3, 11.0), (2, 3, 13.0)];
        for &(i, j, v) in &vals {
            a[(i, j)] = c(v);
            a[(j, i)] = c(-v);
        }
        // z12 z34 - z13 z24 + z14 z23
        let expected = 2.0 * 13.0 - 3.0 * 11.0 + 5.0 * 7.0;
        assert!((pfaffian(&a) - c(expected)).norm() < 1e-12);
    }
}
