//! The twist m and exponents a_j of an invariant tensor on a product of
//! domains: a_j r_j = m n_j with m least.

use tubecover::domains::{minimal_m, solve_prop61, DomainProduct, TensorDegreeSpec};

fn main() {
    // Lie ball IV_3: no invariant section at m = 1, the first one at m = 2.
    let (m, a) = minimal_m(&[(2, 3)]).unwrap();
    println!("IV_3: m = {m}, a = {a:?}");

    for text in ["I_{2,2} × III_3", "IV_5 × IV_3", "H^3 × II_4", "E27"] {
        let p: DomainProduct = text.parse().unwrap();
        let pairs: Vec<(u32, u32)> = p.factors().iter().map(|d| (d.rank, d.dim)).collect();
        let (m, _) = minimal_m(&pairs).unwrap();
        let spec = TensorDegreeSpec::new(&p, m).unwrap();
        println!("{p}: m = {}, k = {}, a = {:?}", spec.m, spec.k, spec.exponents);
    }

    // n = 4a + 6b with p = a + b factors of type I_{2,2} and III_3
    for (n, p) in [(10, 2), (8, 2), (7, 1), (20, 4)] {
        println!("n = {n}, p = {p}: {:?}", solve_prop61(n, p));
    }
}
