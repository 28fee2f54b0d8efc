//! Square-free decomposition and variable blocks.
//!
//! A tensor polynomial is a product of powers of norms on disjoint variable
//! blocks; this recovers the multiplicities and the blocks.

use tubecover::poly::{is_squarefree, squarefree_decomposition, variable_blocks, Polynomial};

fn show(text: &str) {
    let p: Polynomial = text.parse().unwrap();
    let ff = squarefree_decomposition(&p).unwrap();
    println!("{text}");
    println!("  square-free: {}", is_squarefree(&p).unwrap());
    println!("  constant {}", ff.constant);
    for (s, k) in &ff.factors {
        println!("  ({s})^{k}");
    }
    for b in variable_blocks(&ff) {
        let vars: Vec<String> = b.variables.iter().map(|v| format!("x{}", v + 1)).collect();
        println!("  block {{{}}} with {} factor(s)", vars.join(","), b.factors.len());
    }
    assert_eq!(ff.expand(p.nvars()), p);
}

fn main() {
    show("x1*x2*x3");
    show("4*x1^2*x2^2*x3^3");
    show("(x1*x4 - x2*x3)^2*(x5^2 + x6^2 + x7^2)^3");
    show("(x1 + x2)^2*(x1 - x2)");
}
