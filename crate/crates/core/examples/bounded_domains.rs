//! Bounded realizations, the matrix Mobius action and the Cayley transform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tubecover::domains::IrreducibleDomain;
use tubecover::linalg::max_abs;
use tubecover::tensors::{
    cayley, contains, in_siegel_half_space, inverse_cayley, mobius, random_group_element_with, random_point,
    BOUNDARY_TOLERANCE,
};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["I_{2,2}", "II_4", "III_3", "IV_5"] {
        let d: IrreducibleDomain = name.parse().unwrap();
        let z = random_point(&d, &mut rng, 0.8).unwrap();
        println!("{name}: sample point inside = {}", contains(&d, &z.z, BOUNDARY_TOLERANCE).unwrap());
        if matches!(name, "IV_5") {
            continue;
        }
        let g = random_group_element_with(&d, &mut rng, 1.0).unwrap();
        println!("  group relation residual {:.1e}", g.relation_residual());
        let w = mobius(&g, &z).unwrap();
        println!("  image stays inside = {}", contains(&d, &w.z, BOUNDARY_TOLERANCE).unwrap());
        let s = cayley(&z.z).unwrap();
        println!("  Cayley image in the Siegel half-space = {}", in_siegel_half_space(&s, 1e-12));
        println!("  round trip error {:.1e}", max_abs(&(inverse_cayley(&s).unwrap() - &z.z)));
    }
}
