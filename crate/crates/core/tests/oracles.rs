//! Reference values checked against independent computations: expansions
//! done by hand or by brute force, and known closed forms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tubecover::classifier::{classify, classify_semispecial, Verdict, REASON_DEGREE, REASON_NO_DOMAIN};
use tubecover::domains::{self, DomainProduct, IrreducibleDomain};
use tubecover::jordan::{koecher_norm_polynomial, JordanAlgebraSpec};
use tubecover::poly::{irreducibility_check, rat, Irreducibility, Polynomial};
use tubecover::tensors::build_psi;

fn p(s: &str) -> Polynomial {
    s.parse().unwrap()
}

fn spec(s: &str) -> JordanAlgebraSpec {
    s.parse().unwrap()
}

/// Leibniz expansion of a determinant with polynomial entries.
fn leibniz(entries: &[Vec<Polynomial>]) -> Polynomial {
    let n = entries.len();
    let nvars = entries[0][0].nvars();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(nvars);
    // Heap's algorithm, tracking the sign
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i64, visit: &mut dyn FnMut(&[usize], i64)) {
        if k == 1 {
            visit(perm, *sign);
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, visit);
            if i + 1 < k {
                let j = if k % 2 == 0 { i } else { 0 };
                perm.swap(j, k - 1);
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1;
    heap(n, &mut perm, &mut sign, &mut |perm, s| {
        let mut term = Polynomial::from_int(nvars, s);
        for (i, &j) in perm.iter().enumerate() {
            term = term.try_mul(&entries[i][j]).unwrap();
        }
        total = total.try_add(&term).unwrap();
    });
    total
}

#[test]
fn symmetric_norms_match_leibniz() {
    // variables z_ij, i <= j, row-major
    for n in 2..=4usize {
        let dim = n * (n + 1) / 2;
        let mut idx = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                idx[i][j] = k;
                idx[j][i] = k;
                k += 1;
            }
        }
        let m: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| Polynomial::var(dim, idx[i][j])).collect()).collect();
        assert_eq!(koecher_norm_polynomial(spec(&format!("sym:{n}"))), leibniz(&m), "sym:{n}");
    }
    assert_eq!(koecher_norm_polynomial(spec("sym:2")), p("x1*x3 - x2^2"));
}

#[test]
fn hermitian_norms_match_leibniz() {
    for n in 2..=4usize {
        let dim = n * n;
        let m: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| Polynomial::var(dim, i * n + j)).collect()).collect();
        assert_eq!(koecher_norm_polynomial(spec(&format!("herm:{n}"))), leibniz(&m), "herm:{n}");
    }
    assert_eq!(koecher_norm_polynomial(spec("herm:2")), p("x1*x4 - x2*x3"));
}

/// A product of two linear forms has a Hessian of rank at most 2.
fn hessian_rank(q: &Polynomial) -> usize {
    let n = q.nvars();
    let mut h = DMatrix::<f64>::zeros(n, n);
    let origin = vec![rat(0); n];
    for i in 0..n {
        for j in 0..n {
            let d = q.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
            h[(i, j)] = num_traits::ToPrimitive::to_f64(&d.evaluate(&origin).unwrap()).unwrap();
        }
    }
    h.rank(1e-9)
}

#[test]
fn determinant_is_irreducible() {
    let det = p("x1*x4 - x2*x3");
    assert_eq!(hessian_rank(&det), 4);
    assert!(matches!(irreducibility_check(&det, 32, 0).unwrap(), Irreducibility::Irreducible { complex_split: false }));
    assert!(matches!(irreducibility_check(&p("x1*x2"), 32, 0).unwrap(), Irreducibility::Reducible(_)));
}

#[test]
fn two_variable_quadric_splits_over_c() {
    let q = p("x1^2 + x2^2");
    // (z1 + i z2)(z1 - i z2) at random complex points
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let z = [Complex64::new(rng.random(), rng.random()), Complex64::new(rng.random(), rng.random())];
        let i = Complex64::i();
        let split = (z[0] + i * z[1]) * (z[0] - i * z[1]);
        assert!((q.evaluate_complex(&z).unwrap() - split).norm() < 1e-12);
    }
    assert!(matches!(irreducibility_check(&q, 32, 0).unwrap(), Irreducibility::Irreducible { complex_split: true }));
    let q3 = p("x1^2 + x2^2 + x3^2");
    assert_eq!(hessian_rank(&q3), 3);
    assert!(matches!(irreducibility_check(&q3, 32, 0).unwrap(), Irreducibility::Irreducible { complex_split: false }));
}

/// `exp(A)` of a skew matrix is complex orthogonal.
fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let z = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            a[(i, j)] = z;
            a[(j, i)] = -z;
        }
    }
    a.exp()
}

#[test]
fn spin_norm_is_orthogonally_invariant() {
    let n = koecher_norm_polynomial(spec("spin:4"));
    assert_eq!(n, p("x1^2 + x2^2 + x3^2 + x4^2"));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let q = random_orthogonal(4, &mut rng);
        let x = nalgebra::DVector::<Complex64>::from_fn(4, |_, _| Complex64::new(rng.random(), rng.random()));
        let qx = &q * &x;
        let a = n.evaluate_complex(x.as_slice()).unwrap();
        let b = n.evaluate_complex(qx.as_slice()).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }
}

#[test]
fn build_psi_examples() {
    let h3 = DomainProduct::polydisk(3);
    assert_eq!(build_psi(&h3, 1).unwrap(), p("x1*x2*x3"));
    // (x1 x4 - x2 x3)^2 expanded by hand
    let i22: DomainProduct = "I_{2,2}".parse().unwrap();
    assert_eq!(build_psi(&i22, 1).unwrap(), p("x1^2*x4^2 - 2*x1*x2*x3*x4 + x2^2*x3^2"));
    // (x1^2 + x2^2 + x3^2)^3 by the multinomial theorem
    let iv3: DomainProduct = "IV_3".parse().unwrap();
    let mut expected = Polynomial::zero(3);
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            let c = 3 - a - b;
            let coeff = 6 / ((1..=a).product::<u32>() * (1..=b).product::<u32>() * (1..=c).product::<u32>());
            let m = Polynomial::from_terms(3, [(vec![2 * a, 2 * b, 2 * c], rat(coeff as i64))]).unwrap();
            expected = expected.try_add(&m).unwrap();
        }
    }
    assert_eq!(build_psi(&iv3, 2).unwrap(), expected);
}

#[test]
fn reference_values() {
    // least twist for the Lie ball, with exponent 3
    assert_eq!(domains::minimal_m(&[(2, 3)]).unwrap(), (2, vec![3]));
    // dimension 10 with two factors: I_{2,2} x III_3
    assert_eq!(domains::solve_prop61(10, 2), Some((1, 1)));
    assert_eq!(domains::solve_prop61(8, 2), Some((2, 0)));
    assert_eq!(domains::solve_prop61(7, 1), None);
    // exponent 2 on I_{2,2} since d / r = 2
    let i22: IrreducibleDomain = "I_{2,2}".parse().unwrap();
    assert_eq!(domains::minimal_m(&[(i22.rank, i22.dim)]).unwrap(), (1, vec![2]));
    assert_eq!(domains::lookup(3, 27).map(|d| d.to_string()), Some("E27".into()));
}

#[test]
fn classifier_examples() {
    let cases = [
        ("x1*x2*x3", 3, Some("H^3")),
        ("(x1*x4 - x2*x3)^2", 4, Some("I_{2,2}")),
        ("(x1^2 + x2^2 + x3^2)^3", 3, Some("IV_3")),
        ("x1^2*x2", 3, None),
        ("x1*x2", 3, None),
    ];
    for (psi, n, want) in cases {
        let report = classify(&p(psi), n).unwrap();
        let want: Option<DomainProduct> = want.map(|w| w.parse().unwrap());
        assert_eq!(report.product(), want, "{psi}");
    }
    let reject = |psi: &str, n: u32| match classify(&p(psi), n).unwrap().verdict {
        Verdict::Rejected { reason, .. } => reason,
        v => panic!("{psi}: {v:?}"),
    };
    assert_eq!(reject("x1^2*x2", 3), REASON_NO_DOMAIN);
    assert_eq!(reject("x1*x2", 3), REASON_DEGREE);

    // the Pfaffian cubed has degree 6 = n, so it is semi-special
    let pf = koecher_norm_polynomial(spec("quat:2"));
    let report = classify_semispecial(&pf.pow(3), 6).unwrap();
    assert_eq!(report.product(), Some("II_4".parse().unwrap()));
    assert!(classify_semispecial(&pf, 6).is_err());
}
