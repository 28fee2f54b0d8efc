//! Irreducibility by restriction to random rational lines.

use tubecover::jordan::{koecher_norm_polynomial, JordanAlgebraSpec};
use tubecover::poly::{essential_variables, irreducibility_check, Irreducibility, Polynomial};

fn main() {
    let mut cases: Vec<(String, Polynomial)> = ["x1*x2", "x1*x4 - x2*x3", "x1^2 + x2^2", "x1^2 + x2^2 + x3^2", "x1^2 - x2^2"]
        .iter()
        .map(|s| (s.to_string(), s.parse().unwrap()))
        .collect();
    for spec in ["sym:3", "quat:3", "albert"] {
        let spec: JordanAlgebraSpec = spec.parse().unwrap();
        cases.push((format!("norm of {spec}"), koecher_norm_polynomial(spec)));
    }
    for (name, p) in cases {
        let verdict = match irreducibility_check(&p, 32, 0).unwrap() {
            Irreducibility::Irreducible { complex_split: true } => "irreducible over Q, splits over C".to_string(),
            Irreducibility::Irreducible { .. } => "irreducible".to_string(),
            Irreducibility::Reducible(w) => format!("reducible: ({}) * ({})", w.factor, w.cofactor),
            Irreducibility::Inconclusive => "inconclusive".to_string(),
        };
        println!("{name}: {verdict}; {} essential variables", essential_variables(&p));
    }
}
