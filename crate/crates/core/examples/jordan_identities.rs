//! Quadratic-representation identities on random samples.
//!
//! ```text
//! cargo run --example jordan_identities -- herm:3 100
//! ```

use tubecover::jordan::{self, verify_jordan_identities, JordanAlgebraSpec, JordanElement};
use tubecover::linalg::c;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec: JordanAlgebraSpec = args.next().as_deref().unwrap_or("herm:2").parse().unwrap();
    let trials: usize = args.next().map(|t| t.parse().unwrap()).unwrap_or(50);

    let e = jordan::unit(spec);
    println!("{spec}: unit has det {}", jordan::koecher_det(&e));
    let x = JordanElement::from_slice(spec, &vec![c(0.3); spec.dim()]).unwrap().add(&e).unwrap();
    let xi = jordan::inverse(&x).unwrap();
    println!("x o x^-1 = e: {}", jordan::jordan_product(&x, &xi).unwrap().sub(&e).unwrap().coords.norm() < 1e-12);

    let report = verify_jordan_identities(spec, trials, 7, 1e-8);
    for r in &report.records {
        println!("  {:<28} max deviation {:.2e}", r.identity, r.max_deviation);
    }
    println!("all passed: {}", report.passed());
}
