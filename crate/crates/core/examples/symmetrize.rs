//! Affine moves making a quadratic image symmetric under a class -1 involution.

use planemorph::engines::{symmetrize_image, SymmetrizeOptions};
use planemorph::parse::parse_poly;

fn main() {
    for src in ["2*x*y + 3*x", "x^2 + x*y + y", "x^2 + x*y + y^2 + x"] {
        let p = parse_poly(src).unwrap();
        for real in [false, true] {
            match symmetrize_image(&p, SymmetrizeOptions { real }) {
                Ok(t) => {
                    println!("{p} (real {real}): case {}", t.case);
                    for s in &t.steps {
                        println!("  {}: {}", s.label, s.g);
                    }
                    println!("  witness {} is {}-{}", t.witness, t.target, t.symmetry);
                }
                Err(e) => println!("{p} (real {real}): {e}"),
            }
        }
    }
}
