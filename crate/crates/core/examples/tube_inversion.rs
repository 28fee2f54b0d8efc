//! The inversion j(z) = -z^-1 of a tube domain: its Jacobian is P(z)^-1 and
//! it rescales the norm by N(z)^-1.

use tubecover::jordan::JordanAlgebraSpec;
use tubecover::tensors::verify_tube_inversion;

fn main() {
    for s in ["sym:2", "sym:3", "herm:2", "quat:2", "spin:4", "albert"] {
        let spec: JordanAlgebraSpec = s.parse().unwrap();
        println!("{s}");
        for r in verify_tube_inversion(spec, 20, 5, 1e-6) {
            println!("  {:<22} {:.2e} {}", r.check, r.max_residual, if r.pass { "ok" } else { "FAIL" });
        }
    }
}
