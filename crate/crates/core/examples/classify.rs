//! Universal cover from the polynomial of an invariant tensor.
//!
//! ```text
//! cargo run --example classify -- 6 "(x1^2 + x2^2 + x3^2)^3"
//! ```

use tubecover::classifier::{classify, explain};
use tubecover::poly::Polynomial;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(u32, String)> = if args.len() == 2 {
        vec![(args[0].parse().unwrap(), args[1].clone())]
    } else {
        [
            (3, "x1*x2*x3"),
            (4, "(x1*x4 - x2*x3)^2"),
            (3, "(x1^2 + x2^2 + x3^2)^3"),
            (2, "x1^2 + x2^2"),
            (3, "x1^2*x2"),
            (3, "x1*x2"),
        ]
        .iter()
        .map(|(n, s)| (*n, s.to_string()))
        .collect()
    };
    for (n, text) in cases {
        let psi: Polynomial = text.parse().unwrap();
        let report = classify(&psi, n).unwrap();
        println!("== {text}, n = {n}");
        print!("{}", explain(&report));
    }
}
