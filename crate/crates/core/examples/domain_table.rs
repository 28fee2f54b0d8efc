//! Irreducible tube-type domains: rank, dimension, canonical forms.

use tubecover::domains::{enumerate_divisible, lookup, DomainProduct, IrreducibleDomain};

fn main() {
    println!("{:<10} {:>4} {:>4}", "domain", "r", "n");
    for d in enumerate_divisible(27) {
        println!("{:<10} {:>4} {:>4}", d.to_string(), d.rank, d.dim);
    }

    // Low-dimensional coincidences collapse onto one representative.
    for name in ["IV_4", "IV_6", "III_2", "II_2"] {
        let d: IrreducibleDomain = name.parse().unwrap();
        println!("{name} = {}", d.canonical());
    }
    println!("lookup(3, 27) = {:?}", lookup(3, 27).map(|d| d.to_string()));
    println!("lookup(2, 2) = {:?}", lookup(2, 2));

    let p: DomainProduct = "III_3 × I_{2,2} × H^2".parse().unwrap();
    println!("{p}: dim {}, rank {}", p.dim(), p.rank());
}
