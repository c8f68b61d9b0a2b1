//! Keller maps of degree at most two.

use planemorph::engines::wang_special;
use planemorph::parse::parse_endo;

fn main() {
    for src in ["x -> x + y^2; y -> x + y + y^2", "x -> x + (x + y)^2; y -> y - (x + y)^2"] {
        let f = parse_endo(src).unwrap().endo;
        let w = wang_special(&f).unwrap();
        println!("{f}\n  branch {:?}, shear {}\n  inverse {}", w.branch, w.shear, w.inverse);
    }
}
