//! Exact sparse polynomials: parsing, arithmetic, grlex printing.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use tubecover::poly::{gcd, rat, Polynomial};

fn main() {
    let f: Polynomial = "(x1*x4 - x2*x3)^2".parse().unwrap();
    let g: Polynomial = "3/2*x1^2*x2 - x3^3".parse().unwrap();
    println!("f = {f}");
    println!("g = {g}");
    println!("deg f = {:?}, homogeneous of degree {:?}", f.total_degree(), f.is_homogeneous().unwrap());

    let h = f.try_mul(&g.embed(4, 0).unwrap()).unwrap();
    println!("f*g has {} terms", h.len());

    // gcd recovers the shared factor
    let d: Polynomial = "x1*x4 - x2*x3".parse().unwrap();
    println!("gcd(f, d*x1) = {}", gcd(&f, &d.try_mul(&Polynomial::var(4, 0)).unwrap()));

    let df = f.partial_derivative(0).unwrap();
    println!("df/dx1 = {df}");
    let at = f.evaluate(&[rat(1), rat(2), rat(3), rat(4)]).unwrap();
    println!("f(1,2,3,4) = {at}");
}
