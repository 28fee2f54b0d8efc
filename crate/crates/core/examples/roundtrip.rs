//! classify(build_psi(P, m)) = P over products of small dimension.
//!
//! ```text
//! cargo run --release --example roundtrip -- 8
//! ```

use tubecover::classifier::classify;
use tubecover::domains::{enumerate_all, minimal_m, DomainProduct, IrreducibleDomain};
use tubecover::tensors::build_psi;

fn products(pool: &[IrreducibleDomain], start: usize, left: u32, cur: &mut Vec<IrreducibleDomain>, out: &mut Vec<DomainProduct>) {
    if !cur.is_empty() {
        out.push(DomainProduct::new(cur.iter().copied()));
    }
    for i in start..pool.len() {
        if pool[i].dim <= left {
            cur.push(pool[i]);
            products(pool, i, left - pool[i].dim, cur, out);
            cur.pop();
        }
    }
}

fn main() {
    let max_dim: u32 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(6);
    let mut all = Vec::new();
    products(&enumerate_all(max_dim), 0, max_dim, &mut Vec::new(), &mut all);
    let mut bad = 0;
    for p in &all {
        let pairs: Vec<(u32, u32)> = p.factors().iter().map(|d| (d.rank, d.dim)).collect();
        let (m, _) = minimal_m(&pairs).unwrap();
        let report = classify(&build_psi(p, m).unwrap(), p.dim()).unwrap();
        let got = report.product();
        if got.as_ref() != Some(p) {
            bad += 1;
        }
        println!("{p:<24} m={m}  ->  {}", got.map(|q| q.to_string()).unwrap_or_else(|| "rejected".into()));
    }
    println!("{} products, {bad} mismatches", all.len());
}
