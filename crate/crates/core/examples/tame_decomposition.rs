//! Factor a tame automorphism, check the certificate, invert it.

use planemorph::endo::Endo;
use planemorph::parse::parse_endo;
use planemorph::tame::{self, decompose};

fn main() {
    let f = parse_endo("x -> 2*x + y^3 + 1; y -> y + (2*x + y^3)^2").unwrap().endo;
    let cert = decompose(&f).unwrap();
    for (k, factor) in cert.factors.iter().enumerate() {
        println!("phi{} [{}] = {factor}", k + 1, factor.kind());
    }
    println!("verified: {}, Jacobian {}", tame::verify(&cert), cert.jacobian());

    let h = tame::invert(&cert).unwrap();
    println!("inverse: {h}");
    assert!(Endo::compose(&h, &f).is_identity());

    // a non-tame-looking input is reported, not guessed at
    let bad = parse_endo("x -> x^2; y -> y").unwrap().endo;
    if let Err(e) = decompose(&bad) {
        println!("{bad}: {e}");
    }
}
