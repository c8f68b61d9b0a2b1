//! Composition and application of plane endomorphisms.

use planemorph::endo::Endo;
use planemorph::parse::{parse_endo, parse_poly};

fn main() {
    let f = parse_endo("x -> x + y^3; y -> y").unwrap().endo;
    let g = parse_endo("x -> x - y^3; y -> y").unwrap().endo;
    let gf = Endo::compose(&g, &f);
    println!("g o f = {gf}, identity: {}", gf.is_identity());

    let r = parse_poly("x*y + 1").unwrap();
    println!("f applied to {r}: {}", f.apply(&r));
    println!("Jacobian of f: {}, Keller: {}", f.jacobian(), f.is_keller());
    println!("order of the exchange: {:?}", Endo::exchange().order(4));
}
