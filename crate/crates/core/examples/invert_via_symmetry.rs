//! Inversion through an alpha-(skew-)symmetric first image.

use planemorph::endo::Endo;
use planemorph::engines::{invert_via_symmetry, SymmetrizeOptions};
use planemorph::parse::parse_endo;

fn main() {
    for src in ["x -> x + y^2; y -> x + y + y^2", "x -> x + y^2; y -> y"] {
        let f = parse_endo(src).unwrap().endo;
        let out = invert_via_symmetry(&f, SymmetrizeOptions::default()).unwrap();
        println!("{f}\n  route {:?} via {}-{}", out.route, out.delta, out.symmetry);
        println!("  alpha(p) = {}, alpha(q) = {}", out.restriction.alpha_p, out.restriction.alpha_q);
        println!("  inverse {}", out.inverse);
        assert!(Endo::compose(&out.inverse, &f).is_identity());
    }
}
