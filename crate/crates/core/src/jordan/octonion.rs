//! Complexified octonions by Cayley–Dickson doubling of the quaternions.
//!
//! An octonion is `p + q l` with quaternions `p = (e0..e3)`, `q = (e4..e7)`
//! and product `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`. The
//! multiplication of basis units is tabulated once with integer signs.

use std::sync::OnceLock;

use num_complex::Complex64;

pub type Octonion = [Complex64; 8];

type Quat = [i32; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qadd(a: Quat, b: Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn qsub(a: Quat, b: Quat) -> Quat {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn unit(i: usize) -> ([i32; 4], [i32; 4]) {
    let mut p = [0; 4];
    let mut q = [0; 4];
    if i < 4 {
        p[i] = 1;
    } else {
        q[i - 4] = 1;
    }
    (p, q)
}

/// `table()[i][j] = (s, k)` with `e_i e_j = s e_k`.
pub fn table() -> &'static [[(i32, usize); 8]; 8] {
    static T: OnceLock<[[(i32, usize); 8]; 8]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [[(0, 0); 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let (a, b) = unit(i);
                let (c, d) = unit(j);
                let p = qsub(qmul(a, c), qmul(qconj(d), b));
                let q = qadd(qmul(d, a), qmul(b, qconj(c)));
                let full = [p[0], p[1], p[2], p[3], q[0], q[1], q[2], q[3]];
                let k = full.iter().position(|&x| x != 0).expect("units multiply to a unit");
                *cell = (full[k], k);
            }
        }
        t
    })
}

pub fn zero() -> Octonion {
    [Complex64::new(0.0, 0.0); 8]
}

pub fn scalar(s: Complex64) -> Octonion {
    let mut o = zero();
    o[0] = s;
    o
}

pub fn mul(a: &Octonion, b: &Octonion) -> Octonion {
    let t = table();
    let mut out = zero();
    for i in 0..8 {
        if a[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..8 {
            let (s, k) = t[i][j];
            out[k] += a[i] * b[j] * s as f64;
        }
    }
    out
}

pub fn conj(a: &Octonion) -> Octonion {
    let mut o = *a;
    for x in o.iter_mut().skip(1) {
        *x = -*x;
    }
    o
}

pub fn add(a: &Octonion, b: &Octonion) -> Octonion {
    let mut o = *a;
    for (x, y) in o.iter_mut().zip(b) {
        *x += y;
    }
    o
}

pub fn scale(a: &Octonion, s: Complex64) -> Octonion {
    let mut o = *a;
    for x in o.iter_mut() {
        *x *= s;
    }
    o
}

/// Complex-bilinear norm `a conj(a) = sum a_i^2`.
pub fn norm(a: &Octonion) -> Complex64 {
    a.iter().map(|x| x * x).sum()
}

pub fn re(a: &Octonion) -> Complex64 {
    a[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cgauss;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng) -> Octonion {
        std::array::from_fn(|_| cgauss(rng))
    }

    fn close(a: &Octonion, b: &Octonion) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-10)
    }

    #[test]
    fn unit_and_squares() {
        let t = table();
        for i in 0..8 {
            assert_eq!(t[0][i], (1, i));
            assert_eq!(t[i][0], (1, i));
            if i > 0 {
                assert_eq!(t[i][i], (-1, 0));
            }
        }
    }

    #[test]
    fn composition_and_alternativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (x, y) = (random(&mut rng), random(&mut rng));
            let lhs = norm(&mul(&x, &y));
            assert!((lhs - norm(&x) * norm(&y)).norm() < 1e-9);
            assert!(close(&mul(&x, &mul(&x, &y)), &mul(&mul(&x, &x), &y)));
            assert!(close(&mul(&mul(&y, &x), &x), &mul(&y, &mul(&x, &x))));
        }
    }

    #[test]
    fn not_associative() {
        let t = table();
        let (s1, k1) = t[1][2];
        let (s2, k2) = t[k1][4];
        let (s3, k3) = t[2][4];
        let (s4, k4) = t[1][k3];
        assert_eq!(k2, k4);
        assert_eq!(s1 * s2, -(s3 * s4));
    }
}
