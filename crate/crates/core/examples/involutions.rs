//! The six builtin involutions, their classes, and conjugation between them.

use planemorph::involution::{classify, conjugator_to_alpha, verify_conjugation, Builtin};
use planemorph::parse::parse_endo;

fn main() {
    for b in Builtin::ALL {
        println!("{b}: {} class {}", b.endo(), classify(&b.endo()).unwrap());
    }
    let g = parse_endo("x -> (1/2)*(x + y); y -> y - x").unwrap().endo;
    let ok = verify_conjugation(&g, &Builtin::Alpha.endo(), &Builtin::Beta.endo()).unwrap();
    println!("g conjugates alpha and beta: {ok}");

    for b in [Builtin::Beta, Builtin::Gamma] {
        if let Some(u) = conjugator_to_alpha(b) {
            println!("conjugator from {b} to alpha: {u}");
        }
    }
}
