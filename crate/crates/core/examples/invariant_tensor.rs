//! Invariant tensors: the polynomial psi on a product, and numerical checks
//! of the Jacobian cocycle and of invariance under the automorphism group.

use tubecover::domains::{DomainProduct, IrreducibleDomain};
use tubecover::tensors::{build_psi, verify_cocycle, verify_tensor_invariance, InvariantTensor};

fn main() {
    for (text, m) in [("H^3", 1), ("I_{2,2}", 1), ("IV_3", 2), ("I_{2,2} × III_3", 1)] {
        let p: DomainProduct = text.parse().unwrap();
        let psi = build_psi(&p, m).unwrap();
        let shown = if psi.len() <= 8 { psi.to_string() } else { format!("{} terms", psi.len()) };
        println!("{p}, m = {m}: psi = {shown}");
    }

    for name in ["I_{2,2}", "II_4", "III_3", "IV_5", "E27"] {
        let d: IrreducibleDomain = name.parse().unwrap();
        let tensor = InvariantTensor::minimal(d);
        println!("{name}: a = {}, m = {}", tensor.a, tensor.m);
        let mut records = verify_tensor_invariance(&tensor, 10, 0, 1e-5).unwrap();
        if let Ok(cocycle) = verify_cocycle(&d, 10, 0, 1e-5) {
            records.extend(cocycle);
        }
        for r in records {
            println!("  {:<22} {:.2e} {}", r.check, r.max_residual, if r.pass { "ok" } else { "FAIL" });
        }
    }
}
