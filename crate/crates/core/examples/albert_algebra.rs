//! The exceptional Jordan algebra of 3x3 octonion Hermitian matrices.

use tubecover::jordan::octonion::{self, Octonion};
use tubecover::jordan::{self, JordanAlgebraSpec, JordanElement};
use tubecover::linalg::c;

fn unit(k: usize) -> Octonion {
    let mut o = octonion::zero();
    o[k] = c(1.0);
    o
}

fn main() {
    // Octonions are not associative: (e1 e2) e4 != e1 (e2 e4).
    let (a, b, d) = (unit(1), unit(2), unit(4));
    let left = octonion::mul(&octonion::mul(&a, &b), &d);
    let right = octonion::mul(&a, &octonion::mul(&b, &d));
    println!("(e1 e2) e4 = {:?}", left.iter().map(|z| z.re).collect::<Vec<_>>());
    println!("e1 (e2 e4) = {:?}", right.iter().map(|z| z.re).collect::<Vec<_>>());
    println!("n(e1 + e2) = {}", octonion::norm(&octonion::add(&a, &b)));

    let spec: JordanAlgebraSpec = "albert".parse().unwrap();
    // coordinates [a, b, c, u(8), v(8), w(8)]
    let mut coords = vec![c(0.0); 27];
    coords[..3].copy_from_slice(&[c(2.0), c(3.0), c(5.0)]);
    coords[3] = c(0.5);
    let x = JordanElement::from_slice(spec, &coords).unwrap();
    println!("det x = {}", jordan::koecher_det(&x));
    let xi = jordan::inverse(&x).unwrap();
    let e = jordan::jordan_product(&x, &xi).unwrap();
    println!("x o x^-1 = unit: {}", e.sub(&jordan::unit(spec)).unwrap().coords.norm() < 1e-12);

    let report = jordan::verify_jordan_identities(spec, 20, 1, 1e-8);
    println!("identities hold on 20 samples: {}", report.passed());
}
