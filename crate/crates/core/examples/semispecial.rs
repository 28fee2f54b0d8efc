//! Semi-special tensors: degree equal to the dimension, cover read off from
//! the factorization.

use tubecover::classifier::{classify_semispecial, explain};
use tubecover::domains::DomainProduct;
use tubecover::tensors::build_psi;

fn main() {
    for text in ["II_4", "I_{2,2} × H^2", "III_3"] {
        let p: DomainProduct = text.parse().unwrap();
        let psi = build_psi(&p, 1).unwrap();
        match classify_semispecial(&psi, p.dim()) {
            Ok(report) => print!("{text}\n{}", explain(&report)),
            Err(e) => println!("{text}: {e}"),
        }
    }
}
