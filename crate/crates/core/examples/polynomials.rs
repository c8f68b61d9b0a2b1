//! Bivariate polynomials: Jacobians, weighted gradings, parity.

use planemorph::parse::parse_poly;
use planemorph::poly::{jacobian, Axis, Weight};

fn main() {
    let p = parse_poly("x + y^3 + x^2*y").unwrap();
    let q = parse_poly("y").unwrap();
    println!("J({p}, {q}) = {}", jacobian(&p, &q));

    for (w, part) in p.graded_parts(Weight(1, 2)) {
        println!("weight {w}: {part}");
    }
    println!("leading form for (1,2): {}", p.leading_form(Weight(1, 2)));

    let even = parse_poly("x^3 + x*y^2 + 7").unwrap();
    println!("{even}: parity in y {:?}, in x {:?}", even.parity_profile(Axis::Y), even.parity_profile(Axis::X));
}
