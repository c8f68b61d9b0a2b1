//! Inverting Keller maps with an image of degree one.

use planemorph::engines::degree1_reduce;
use planemorph::parse::parse_endo;

fn main() {
    for src in ["x -> x + 1; y -> 3*y + x^2", "x -> y + x^3; y -> x", "x -> x^2; y -> y^2"] {
        let f = parse_endo(src).unwrap().endo;
        match degree1_reduce(&f) {
            Ok(r) => println!("{f}\n  reduced {} (swapped {})\n  inverse {}", r.reduced, r.swapped, r.inverse),
            Err(e) => println!("{f}: {e}"),
        }
    }
}
