//! Norm polynomials of the simple Jordan algebras.

use tubecover::jordan::{koecher_norm_polynomial, JordanAlgebraSpec};

fn main() {
    for s in ["sym:2", "sym:3", "herm:2", "quat:2", "quat:3", "spin:5", "albert"] {
        let spec: JordanAlgebraSpec = s.parse().unwrap();
        let n = koecher_norm_polynomial(spec);
        let shown = if n.len() <= 12 { n.to_string() } else { format!("{} terms", n.len()) };
        println!("{s:<7} {} rank {} dim {}: N = {shown}", spec.domain(), spec.rank(), spec.dim());
    }
}
